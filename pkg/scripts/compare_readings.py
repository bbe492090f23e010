"""Run every identity that has an alternative (printed) reading next to the default one.

Usage: python3 scripts/compare_readings.py [--draws N] [--seed S]
"""

import argparse

from appell.verify import SUITE_NAMES, run_identity, suite_identities


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'identity':45s} {'reading':11s} {'max rel':>10s} {'tol':>8s}  verdict")
    for suite in SUITE_NAMES:
        ids = suite_identities(suite, strict_paper=True)
        variants = {i.identity_id.split(":")[0] for i in ids if i.diagnostic}
        for ident in ids:
            if ident.identity_id.split(":")[0] not in variants:
                continue
            rep = run_identity(ident, args.draws, args.seed)
            verdict = "holds" if rep.passed else "fails"
            print(f"{suite + '/' + ident.identity_id:45s} {ident.reading:11s} "
                  f"{rep.max_rel_residual:10.2e} {rep.tolerance:8.0e}  {verdict}")


if __name__ == "__main__":
    main()
