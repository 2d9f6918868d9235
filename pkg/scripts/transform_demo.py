#!/usr/bin/env python3
"""Walk a sequence through the composite operator and back, per preset.

Usage: python scripts/transform_demo.py [order]
"""

import sys
from fractions import Fraction as F

from genmeans import PresetSpec, SequenceWindow, inverse_transform, preset, space_norm, transform


def main():
    order = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    x = SequenceWindow(tuple(F((-1) ** i, i + 1) for i in range(order)))
    presets = [
        ("identity m=1", preset(PresetSpec("identity"), order, m=1)),
        ("euler a=1/2 m=1", preset(PresetSpec("euler", alpha=F(1, 2)), order, m=1)),
        ("aydin a=1/3 m=1", preset(PresetSpec("aydin", alpha=F(1, 3)), order, m=1)),
        ("lambda L=n+1", preset(PresetSpec("lambda", lam=tuple(F(i + 1) for i in range(4 * order))), order)),
    ]
    print(f"input x = {[str(v) for v in x.values]}")
    for name, p in presets:
        y = transform(p, x)
        back = inverse_transform(p, y)
        norm = space_norm(p, x)
        ok = back.values == x.values
        print(f"\n{name}")
        print(f"  y      = {[str(v) for v in y.values]}")
        print(f"  norm   = {norm.value} (attained at {norm.arg_index})")
        print(f"  round trip exact: {ok}")
        if not ok:
            raise SystemExit("round trip failed")


if __name__ == "__main__":
    main()
