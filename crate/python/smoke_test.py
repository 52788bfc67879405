"""Smoke test for the `rvt` extension module. Build it first:

    pip install --no-build-isolation -e crates/python
"""

import rvt

w = rvt.Word("RVLL2")
assert str(w) == "RVL1L2" and len(w) == 4
assert w.planes() == ["V", "T1", "T2"]
assert w.rc() == "RCCC"

cfg = w.configuration()
assert cfg.vertical.delta == "d0_4"
assert [b.delta for b in cfg.t1] == ["d2_2"]
assert [b.delta for b in cfg.t2] == ["d3_1"]
assert cfg.lines == ["L1", "L2", "L3"]

t2 = rvt.configuration("RVLT2").t2[0]
assert t2.delta == "d3_1"
assert t2.vanishing == "(0,0,0,u1,v1,0,v2,u3,0,u4,0)", t2.vanishing

assert len(rvt.Word("RVL").pfaffian()) == 6
assert [rvt.count_words(k) for k in range(1, 9)] == [1, 2, 6, 23, 98, 433, 1935, 8677]
assert rvt.count_words(40) > 2**64
assert len(rvt.enumerate_words(4)) == 23

try:
    rvt.Word("RRT1")
except ValueError as e:
    assert "position 3" in str(e)
else:
    raise AssertionError("RRT1 accepted")

ok, failures = rvt.cross_check(5)
assert ok, failures

rows = {row: (passed, total) for row, passed, total in rvt.table2_summary(0, 2)}
assert rows["Rw'L2T1"][0] == rows["Rw'L2T1"][1]

print("smoke test passed")
