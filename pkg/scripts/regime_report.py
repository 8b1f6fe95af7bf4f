#!/usr/bin/env python3
"""Print the regime tables of the built-in integrators and locate the
critical increment of the vp composite by bisection.

Usage:
    python scripts/regime_report.py [--step STEP] [--max-tau TAU]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from shadowosc.classifier import classify, criticality_gap
from shadowosc.integrators import BUILDERS, make, vp
from shadowosc.verify import locate_vp_critical_tau


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--step", type=float, default=0.25)
    parser.add_argument("--max-tau", type=float, default=5.0)
    args = parser.parse_args()

    taus = []
    k = 1
    while k * args.step <= args.max_tau + 1e-12:
        taus.append(k * args.step)
        k += 1

    for name in sorted(BUILDERS):
        print(f"\n{name}")
        print(f"  {'tau':>6}  {'case':<6} {'trace':>10}  {'|T^2-4|':>10}")
        for tau in taus:
            r = make(name, tau)
            tag, _ = classify(r)
            print(f"  {tau:>6.2f}  {tag.value:<6} {r.trace():>10.4f}  "
                  f"{criticality_gap(r):>10.3e}")

    critical = locate_vp_critical_tau()
    tag, eigen = classify(vp(critical))
    print(f"\nvp critical increment: tau = {critical:.12f}")
    print(f"  classifies as {tag.value} (eigenvalue {eigen.eigenvalue.real:+.0f}, "
          "defective): no Hamiltonian exists there")
    return 0


if __name__ == "__main__":
    sys.exit(main())
