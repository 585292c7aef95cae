#!/usr/bin/env python3
"""Explore the convention-tuple space beyond what calibration needs.

Prints the calibration report, then probes how the surviving tuples differ
downstream: the anchor identities fix the biquadratic pipeline completely,
but mixed-degree pairs still distinguish the survivors.  The discrepancy is
confined to the classicality gap; the represented bracket values themselves
stay aligned pair by pair only for the chosen tuple's kappa normalization.
"""

import argparse

from pbracket.calibration import calibration_report
from pbracket.group_algebra import GroupSignature
from pbracket.pmech import ClassicalPoly, mechanise_weyl
from pbracket.qc_bracket import bracket_via_universal, classicality_gap


PROBES = [
    ("q1^2 vs p1", lambda d: (ClassicalPoly.var(d, "q", 1) ** 2,
                              ClassicalPoly.var(d, "p", 1))),
    ("q1^2 vs p1^2", lambda d: (ClassicalPoly.var(d, "q", 1) ** 2,
                                ClassicalPoly.var(d, "p", 1) ** 2)),
    ("q1^3 vs p1^2", lambda d: (ClassicalPoly.var(d, "q", 1) ** 3,
                                ClassicalPoly.var(d, "p", 1) ** 2)),
    ("q1*p1 vs q1^2", lambda d: (ClassicalPoly.var(d, "q", 1) * ClassicalPoly.var(d, "p", 1),
                                 ClassicalPoly.var(d, "q", 1) ** 2)),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dof", type=int, default=1)
    args = ap.parse_args()

    report = calibration_report(args.dof)
    print(report.render())
    print()
    print("probing the surviving tuples on mixed-degree pairs")
    print("(bracket image via the universal route, then the classicality gap)")
    for conv in report.passing:
        sig = GroupSignature(args.dof, conv)
        print(f"\n  {conv}")
        for label, build in PROBES:
            f, g = build(args.dof)
            k1 = mechanise_weyl(sig, f)
            k2 = mechanise_weyl(sig, g)
            image = bracket_via_universal(k1, k2)
            gap = classicality_gap(k1, k2)
            print(f"    {label:16s} image = {image}")
            print(f"    {'':16s} gap   = {gap}")


if __name__ == "__main__":
    main()
