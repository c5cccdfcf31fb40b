"""Print Tables 1, 2, 4 and 5 next to the published digits.

    python scripts/reproduce_tables.py [--rounding trunc|round]
"""

import argparse
from decimal import ROUND_DOWN, ROUND_HALF_EVEN

from hilbexact.tables import build_table, rendering_mode, render_decimal

PRINTED = {
    1: [
        ["1.0029", "2.0808", "2.9340", "5.0296", "7.0278", "10.9325"],
        ["0", "2.1281", "0", "4.8883", "0", "10.1650"],
        ["-0.8747", "1.3314", "-1.9544", "2.7902", "-3.8958", "5.3410"],
    ],
    2: [
        ["0.9999", "2.0005", "2.9999", "4.9999", "6.9999", "10.9999"],
        ["0.0001", "1.9999", "-0.0002", "5.0001", "-0.0000", "9.9999"],
        ["-1.0004", "1.0003", "-2.0000", "3.0005", "-3.9994", "5.0003"],
    ],
    4: [
        ["0.5714", "0.5054", "0.4977", "0.4993", "0.5000"],
        ["-0.4285", "-0.4946", "-0.5023", "-0.5006", "-0.5000"],
    ],
    5: [
        ["0.2505", "0.2500", "0.2500", "0.2500", "0.2500"],
        ["-0.2499", "-0.2499", "-0.2500", "-0.2500", "-0.2500"],
        ["-0.2499", "-0.2499", "-0.2500", "-0.2500", "-0.2500"],
        ["0.2495", "0.2499", "0.2499", "0.2499", "0.2499"],
    ],
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rounding", choices=["trunc", "round"], default="trunc")
    args = ap.parse_args()
    mode = ROUND_DOWN if args.rounding == "trunc" else ROUND_HALF_EVEN
    for number, printed in PRINTED.items():
        table = build_table(number)
        print(f"Table {number}: {table.caption}")
        for (label, values), row in zip(table.rows, printed):
            print(f"  {label}")
            for col, v, p in zip(table.columns, values, row):
                print(f"    {col:>3}  ours {render_decimal(v, 6, mode):>12}  printed {p:>8}  [{rendering_mode(v, p)}]")
        print()


if __name__ == "__main__":
    main()
