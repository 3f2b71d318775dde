"""Acceptance suite: every criterion at its pinned tolerance.

Run with -s to see the one-line pass/fail report per criterion; the same
checks back the `gfkernel selftest` command.
"""

import pytest

from gfkernel.selfcheck import CRITERIA, run_criterion


@pytest.mark.parametrize("cid", sorted(CRITERIA))
def test_criterion(cid):
    res = run_criterion(cid)
    status = "PASS" if res.passed else "FAIL"
    print(f"[{status}] {res.cid} {res.description} ({res.seconds:.1f}s): {res.detail}")
    assert res.passed, f"{res.cid} failed: {res.detail}"
