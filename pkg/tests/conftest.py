import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from starring import RingDescriptor  # noqa: E402

FLEET = [RingDescriptor.zmod(n) for n in range(2, 25)] + [
    RingDescriptor.matzp(2, 2),
    RingDescriptor.matzp(3, 2),
]
SMALL_FLEET = [RingDescriptor.zmod(n) for n in (2, 4, 6, 8, 9, 12)] + [RingDescriptor.matzp(2, 2)]

Z6 = RingDescriptor.zmod(6)
Z8 = RingDescriptor.zmod(8)
Z4 = RingDescriptor.zmod(4)
M22 = RingDescriptor.matzp(2, 2)
M32 = RingDescriptor.matzp(3, 2)
Q1 = RingDescriptor.matqi(1)
Q2 = RingDescriptor.matqi(2)

# criterion number -> (passed, summary), filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text}")


@pytest.fixture(params=FLEET, ids=str)
def fleet_ring(request):
    return request.param
