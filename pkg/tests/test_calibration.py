"""Exhaustive convention calibration: the anchor identities select the
standard tuple and the search is a real discriminator."""

import time

from pbracket.scalars import CR_ONE
from pbracket.group_algebra import ConventionTuple
from pbracket.calibration import calibrate_conventions, calibration_report


def test_calibration_selects_standard_tuple():
    report = calibration_report()
    assert report.chosen == ConventionTuple.standard()
    assert report.candidates == 1024
    assert report.matched_order == "PQ"


def test_passing_tuples_share_pinned_slots():
    report = calibration_report()
    assert len(report.passing) == 4
    chosen = report.chosen
    assert chosen == report.passing[0]  # first in enumeration order wins
    for t in report.passing:
        assert t.eps_comm == chosen.eps_comm
        assert t.orient == chosen.orient
        assert t.rep_s_sign == chosen.rep_s_sign
        assert t.kappa_s == chosen.kappa_s
        # the x and y factors only need to cancel against each other
        assert t.kappa_x * t.kappa_y == CR_ONE
    assert len(set(report.passing)) == 4


def test_passing_tuples_not_downstream_equivalent():
    report = calibration_report()
    assert report.downstream_equivalent is False
    assert len(report.downstream_fingerprints) == len(report.passing)
    assert len(set(report.downstream_fingerprints)) > 1
    chosen_fp = dict(zip(report.passing, report.downstream_fingerprints))[report.chosen]
    assert chosen_fp == "0"


def test_negative_control_selects_a_different_set():
    straight = calibration_report()
    control = calibration_report(pipeline_sign=-1)
    assert set(control.passing).isdisjoint(set(straight.passing))
    assert control.passing  # the negated target is satisfiable, by other tuples
    assert control.chosen != straight.chosen


def test_report_renders_deterministically_and_fast():
    t0 = time.monotonic()
    a = calibration_report().render()
    elapsed = time.monotonic() - t0
    b = calibration_report().render()
    assert a == b
    assert "(chosen)" in a
    assert "candidates searched : 1024" in a
    assert elapsed < 5.0


def test_calibrate_conventions_shortcut():
    assert calibrate_conventions() == ConventionTuple.standard()
