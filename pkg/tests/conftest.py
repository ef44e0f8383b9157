from __future__ import annotations

import functools

import pytest

from hopfchar.battery import compute, load_suite
from hopfchar.groups import cyclic_group, dihedral_group, klein_group, quaternion_group, symmetric_group

CRITERIA: dict[str, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def example_instances():
    return tuple(load_suite("examples"))


@functools.lru_cache(maxsize=None)
def computed(name: str):
    for inst in example_instances():
        if inst.name == name:
            return compute(inst)
    raise KeyError(name)


def instance_names(mode: str | None = None) -> list[str]:
    return [i.name for i in example_instances() if mode is None or i.mode == mode]


GROUPS = {
    "C2": lambda: cyclic_group(2),
    "C4": lambda: cyclic_group(4),
    "Klein": klein_group,
    "S3": lambda: symmetric_group(3),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
}


@pytest.fixture(params=sorted(GROUPS))
def small_group(request):
    return GROUPS[request.param]()


@pytest.fixture
def record_criterion():
    def record(key: str, ok: bool, detail: str = "") -> None:
        CRITERIA[key] = (ok, detail)
        print(f"criterion {key}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        ok, detail = CRITERIA[key]
        terminalreporter.write_line(f"criterion {key:>3}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
