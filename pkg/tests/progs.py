"""Shared access to the fixture programs for the test modules."""

from pathlib import Path

from namednum.program import StepProgram, parse

PROGRAM_DIR = Path(__file__).resolve().parent.parent / "programs"


def source(name: str) -> str:
    return (PROGRAM_DIR / name).read_text()


def load(name: str) -> StepProgram:
    return parse(source(name))


ALL_FIXTURES = [
    "cherries.nn",
    "cherries_kevin.nn",
    "cherries_ratio.nn",
    "rabbits.nn",
    "taps.nn",
    "average_speed.nn",
    "raft.nn",
    "meeting_cars.nn",
]
