"""Smoke test for the pointsep extension module."""

import json
import pathlib

import pointsep

E1 = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "data" / "e1.json"


def test_exact_e1():
    text = E1.read_text()
    assert pointsep.solve(text) == [2, 3, 4]
    assert pointsep.is_separating(text, [2, 3, 4])
    assert not pointsep.is_separating(text, [3, 4])


def test_approximations_stay_close():
    text = E1.read_text()
    assert len(pointsep.solve(text, algo="plus1", seed=7)) <= 4
    assert len(pointsep.solve(text, algo="multadd", epsilon=0.5)) <= 5
    assert len(pointsep.solve(text, algo="plusk", k=2)) <= 5


def test_generated_instance_round_trip():
    text = pointsep.generate("disks", 12, seed=3)
    assert text == pointsep.generate("disks", 12, seed=3)
    assert len(json.loads(text)["objects"]) == 12
    found = pointsep.solve(text, oracle="diskgrid")
    if found is not None:
        assert pointsep.is_separating(text, found)


def test_bad_input_raises():
    try:
        pointsep.solve("{}")
    except ValueError:
        return
    raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
    print("ok")
