"""Show the rotating encoded role for a small code and the cycle capacity."""

import argparse
import sys

from npcodes.codes import construct_bch, single_parity_code
from npcodes.scheme import cycle_capacity, rotation_table, run_rounds


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    g = ap.add_mutually_exclusive_group()
    g.add_argument("--parity", type=int, default=5, metavar="N")
    g.add_argument("--bch", nargs=2, type=int, metavar=("N", "D"))
    ap.add_argument("--cycles", type=int, default=1)
    args = ap.parse_args(argv)
    code = construct_bch(*args.bch) if args.bch else single_parity_code(args.parity)
    rounds = run_rounds(code, code.n * args.cycles, lambda c, s: 0)
    print(code.label)
    print(rotation_table(rounds))
    led = cycle_capacity(code.n, code.m)
    print(f"encoded rounds per connection per cycle: {sorted(set(led.encoded))}")
    print(f"normalized capacity: {led.normalized}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
