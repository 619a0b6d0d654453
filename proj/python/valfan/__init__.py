"""Exact fans over rank-one value groups.

Thin re-export of the compiled module: every entry point takes and returns
fan documents / JSON reports as strings, with the CLI exit-code convention
(0 pass, 1 verified negative, 2 engine exhaustion or oracle stall, 3 bad
input).
"""

from ._valfan import check, complete, fixture, reduce, render, toric_report

__all__ = ["check", "complete", "fixture", "reduce", "render", "toric_report"]
