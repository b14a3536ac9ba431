#!/usr/bin/env python3
"""High-precision evaluation of the boundary constant
B(s,t) = (1+s)^2/2 log(1+s) - s^2/2 log s + (1+t)^2/2 log(1+t) - t^2/2 log t
       - (2+s+t)^2/2 log(2+s+t) + (1+s+t)^2/2 log(1+s+t),
with u^2 log u continued by 0 at u = 0. Freezes B(0,0) and B(1,0)."""

import mpmath as mp

mp.mp.dps = 40


def half_sq_log(u):
    return 0 if u == 0 else mp.mpf(u) ** 2 / 2 * mp.log(u)


def b(s, t):
    return (half_sq_log(1 + s) - half_sq_log(s) + half_sq_log(1 + t) - half_sq_log(t)
            - half_sq_log(2 + s + t) + half_sq_log(1 + s + t))


if __name__ == "__main__":
    b00 = b(0, 0)
    b10 = b(1, 0)
    print("B(0,0) =", mp.nstr(b00, 25), " vs -2 log 2 =", mp.nstr(-2 * mp.log(2), 25))
    print("B(1,0) =", mp.nstr(b10, 25), " vs 4 log 2 - 9/2 log 3 =",
          mp.nstr(4 * mp.log(2) - mp.mpf(9) / 2 * mp.log(3), 25))
    assert mp.almosteq(b00, -2 * mp.log(2))
    assert mp.almosteq(b10, 4 * mp.log(2) - mp.mpf(9) / 2 * mp.log(3))
    # double-precision values frozen in the goldens
    print("double B(0,0) =", float(b00))
    print("double B(1,0) =", float(b10))
