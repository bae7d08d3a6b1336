"""Plane-wave error of the Yee scheme under grid refinement.

Usage: python3 scripts/convergence_study.py [--sizes 16,32,64,128,256] [--courant 0.5]
"""
import argparse
import math
import sys

from formdescent.fdtd import plane_wave_error


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="16,32,64,128,256")
    ap.add_argument("--courant", type=float, default=0.5)
    ap.add_argument("--t-end", type=float, default=1.0)
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    errors = [plane_wave_error(n, args.t_end, args.courant) for n in sizes]
    print(f"{'n':>6} {'error':>12} {'ratio':>8} {'order':>6}")
    for i, (n, e) in enumerate(zip(sizes, errors)):
        if i == 0:
            print(f"{n:>6} {e:12.4e}")
            continue
        ratio = errors[i - 1] / e
        order = math.log(ratio) / math.log(n / sizes[i - 1])
        print(f"{n:>6} {e:12.4e} {ratio:8.4f} {order:6.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
