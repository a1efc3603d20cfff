"""Smoke test for the `helly` extension module.

Build and install first:

    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/helly-*.whl
    python python/smoke_test.py
"""

import json
from fractions import Fraction

import helly

TRIPLE = {
    "d": 2,
    "points": [[str(x), 1] for x in (0, 1, 2, 4, 5)] + [[str(y), 2] for y in (0, 1, 2, 3)],
    "sets": [
        {"name": "A", "levels": [{"level": 1, "lo": "0", "hi": "1"}, {"level": 2, "lo": "0", "hi": "1"}]},
        {"name": "B", "levels": [{"level": 1, "lo": "1", "hi": "2"}, {"level": 2, "lo": "2", "hi": "3"}]},
        {"name": "C", "levels": [{"level": 1, "lo": "4", "hi": "5"}, {"level": 2, "lo": "1", "hi": "2"}]},
    ],
}

LINE = {
    "d": 1,
    "points": [[str(x), 1] for x in range(4)],
    "sets": [
        {"name": "A", "levels": [{"level": 1, "lo": "0", "hi": "2"}]},
        {"name": "B", "levels": [{"level": 1, "lo": "1", "hi": "3"}]},
    ],
}


def main():
    triple = json.dumps(TRIPLE)
    line = json.dumps(LINE)

    canon = helly.canonicalize(triple)
    assert helly.canonicalize(canon) == canon

    assert helly.nerve(triple) == [[1, 2], [1, 3], [2, 3]]

    seq = helly.sweep_collapse(line)
    assert [s["free_face"] for s in seq["steps"]] == [[1], [2]]

    assert helly.collapse_sequence([[1, 2], [2, 3], [1, 3]], 1) is None
    assert helly.collapse_sequence([[1, 2], [2, 3], [1, 3]], 2) is not None

    r = helly.pierce(triple)
    assert (r["tau"], r["nu"]) == (2, 1)
    assert Fraction(r["tau_star"]) == Fraction(r["nu_star"]) == Fraction(3, 2)

    part = helly.radon(line, [0, 1, 2])
    assert part is not None and len(part["x"]) + len(part["y"]) == 3

    assert helly.helly(triple)["verdict"] is True
    assert helly.helly(triple, m=2)["verdict"] is False

    spec = {
        "d": 2, "points_per_level": [3, 3], "coord_min": 0, "coord_max": 6, "n": 4,
        "presence": "3/4", "width_min": 1, "width_max": 3, "seed": 5,
    }
    doc = helly.generate(json.dumps(spec))
    assert doc == helly.generate(json.dumps(spec))
    assert len(json.loads(doc)["sets"]) == 4

    a = helly.experiment("lp", trials=10, seed=1)
    assert a == helly.experiment("lp", trials=10, seed=1)
    assert a["pass"] and len(a["rows"]) == 10

    try:
        helly.canonicalize('{"d": 1, "points": [], "sets": [], "extra": 0}')
    except ValueError as e:
        assert "$.extra" in str(e)
    else:
        raise AssertionError("unknown field accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
