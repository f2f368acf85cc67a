"""The fourteen acceptance criteria, each checked exactly.

Each test prints one ``[PASS]``/``[FAIL]`` line. Criteria 4 and 13 fail:
the reasons are printed in the detail text.
"""

import pytest

from freevoa.acceptance import CHECKS, run_check


IDS = [f"{cid:02d}-{title.replace(' ', '_')}" for cid, title, _ in CHECKS]


@pytest.mark.parametrize("cid", [cid for cid, _, _ in CHECKS], ids=IDS)
def test_acceptance(cid, capsys):
    result = run_check(cid)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
