"""The twelve acceptance criteria, one test each, with a one-line verdict per criterion."""

import pytest

from cgaverma.acceptance import CRITERIA, run_one


@pytest.mark.parametrize("number", [num for num, _, _ in CRITERIA], ids=[name for _, name, _ in CRITERIA])
def test_criterion(number):
    result = run_one(number, max_grade=8, seed=0)
    print(result.line())
    assert result.ok, result.detail


def test_summary(capsys):
    lines = [run_one(num).line() for num, _, _ in CRITERIA]
    with capsys.disabled():
        print()
        for line in lines:
            print(line)
    assert all(line.startswith("[PASS]") for line in lines)
