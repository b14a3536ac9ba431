#!/usr/bin/env python3
"""Oracle for mixed moments of a free projection pair.

Two independent routes, compared against each other before values freeze:

1. the centering recursion in closed form:
     tau(pq)   = tau(p) tau(q)
     tau(pqpq) = a^2 b^2 + b^2 a(1-a) + a^2 b(1-b)
   (expand each letter as x = x0 + tau(x), alternating centered words die),

2. numeric integration of the 2x2 canonical model against the explicit
   free angle density  sqrt((x-xi)(eta-x)) / (2 pi x (1-x))  on (xi, eta),
   xi/eta = a+b-2ab -+ sqrt(4ab(1-a)(1-b)), rescaled to mass 2 rho.
"""

import math


def density_moment(word, a, b, n=200000):
    """(corners) + (1/2) Int Tr_2(word(e(x), f(x))) dnu(x) via midpoint rule."""
    rho = min(a, b, 1 - a, 1 - b)
    if rho <= 0:
        raise SystemExit("degenerate traces: no interior part")
    mid = a + b - 2 * a * b
    disc = math.sqrt(4 * a * b * (1 - a) * (1 - b))
    xi, eta = mid - disc, mid + disc
    # corner weights (extremal, the chi > -inf case)
    a11 = max(a + b - 1, 0.0)
    corner = a11  # a word value is 1 on E_11 and 0 on the other corners
    raw_ws, xs = [], []
    for i in range(n):
        th = math.pi * (i + 0.5) / n
        x = xi + (eta - xi) * math.sin(th / 2) ** 2
        dens = (eta - xi) ** 2 / (8 * math.pi) * math.sin(th) ** 2 / (x * (1 - x))
        xs.append(x)
        raw_ws.append(dens * math.pi / n)
    scale = 2 * rho / sum(raw_ws)
    acc = 0.0
    for x, w in zip(xs, raw_ws):
        s = math.sqrt(x * (1 - x))
        m = [[1.0, 0.0], [0.0, 1.0]]
        for c in word:
            e = [[1.0, 0.0], [0.0, 0.0]] if c == "p" else [[x, s], [s, 1 - x]]
            m = [[m[0][0] * e[0][0] + m[0][1] * e[1][0],
                  m[0][0] * e[0][1] + m[0][1] * e[1][1]],
                 [m[1][0] * e[0][0] + m[1][1] * e[1][0],
                  m[1][0] * e[0][1] + m[1][1] * e[1][1]]]
        acc += w * scale * (m[0][0] + m[1][1])
    return corner + 0.5 * acc


def recursion_pq(a, b):
    return a * b


def recursion_pqpq(a, b):
    return a * a * b * b + b * b * a * (1 - a) + a * a * b * (1 - b)


if __name__ == "__main__":
    a = b = 0.5
    r1, r2 = recursion_pq(a, b), recursion_pqpq(a, b)
    d1, d2 = density_moment("pq", a, b), density_moment("pqpq", a, b)
    print(f"tau(pq):   recursion {r1:.12f}  density {d1:.12f}")
    print(f"tau(pqpq): recursion {r2:.12f}  density {d2:.12f}")
    assert abs(r1 - d1) < 1e-9 and abs(r2 - d2) < 1e-9
    # pushforward by psi(x) = x^2: tau(p psi(q...)p) route needs only the
    # image moments; E[x^2] under the unit-mass arcsine is 3/8, so the
    # half-trace gives 3/16.
    m2 = density_moment("pqp", a, b)  # = (1/2) E[x] = 1/4
    print(f"tau(pqp) = {m2:.12f} (expect 0.25); pushforward x^2 golden = "
          f"{density_moment('pqpqp', a, b):.12f} (expect 3/16 = 0.1875)")
    assert abs(m2 - 0.25) < 1e-9
    print("free pair moment oracle: OK")
