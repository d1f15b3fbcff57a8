#!/usr/bin/env python3
"""Regenerates quantile_reference.txt.

Line-by-line transliteration of stats::quantile.default (R 4.x) for types
1, 5, 6 and 8, evaluated in IEEE double precision. With R available the same
file can be produced from R itself (see the header of the output).

Output: one case per line,
    <type> <p as hex float> <expected as hex float> <x_1,...,x_n as hex floats>
"""

import math
import random
import sys

EPS = sys.float_info.epsilon


def r_quantile(x, p, qtype):
    x = sorted(x)
    n = len(x)
    fuzz = 4 * EPS
    if qtype <= 3:
        nppm = n * p
        j = math.floor(nppm + fuzz)
        h = 1.0 if nppm > j else 0.0
    else:
        a = {5: 0.5, 6: 0.0, 8: 1 / 3}[qtype]
        b = a
        nppm = a + p * (n + 1 - a - b)
        j = math.floor(nppm + fuzz)
        h = nppm - j
        if abs(h) < fuzz:
            h = 0.0
    xp = [x[0], x[0]] + x + [x[n - 1], x[n - 1]]
    # R is 1-based: x[j + 2] -> xp[j + 1]
    lo = xp[j + 1]
    hi = xp[j + 2]
    q = lo
    if h == 1:
        q = hi
    if 0 < h < 1 and lo != hi:
        q = (1 - h) * lo + h * hi
    return q


def main():
    rng = random.Random(20240611)
    samples = [
        [3.5],
        [1.0, 2.0],
        [2.0, 2.0],
        [0.0, 0.0, 5.0],
        [1.0, 1.0, 1.0, 1.0],
        [0.25, 0.5, 0.5, 0.5, 4.0, 4.0],
    ]
    for n in (3, 5, 7, 10, 13, 25, 31):
        samples.append([rng.lognormvariate(0.0, 1.0) for _ in range(n)])
    for n in (8, 20, 24):
        # heavy ties
        samples.append([float(rng.randint(0, 4)) for _ in range(n)])
    for n in (9, 18):
        samples.append([round(rng.paretovariate(1.5), 2) for _ in range(n)])

    fixed = [1e-12, 1e-6, 0.01, 0.1, 0.2, 0.25, 1 / 3, 0.5, 2 / 3, 0.75, 0.9, 0.99,
             1 - 1e-6, 1 - 2 ** -53]
    out = sys.stdout
    out.write("# type p expected x  (hex floats; transliteration of R quantile.default)\n")
    count = 0
    for x in samples:
        n = len(x)
        # exact plotting-position hits for every type
        ps = list(fixed)
        ps += [k / n for k in range(1, n)]
        ps += [(k - 0.5) / n for k in range(1, n + 1)]
        ps += [k / (n + 1) for k in range(1, n + 1)]
        ps += [(k - 1 / 3) / (n + 1 / 3) for k in range(1, n + 1)]
        ps += [rng.random() for _ in range(3)]
        if n > 13:
            ps = ps[:len(fixed)] + ps[len(fixed)::7]
        ps = [p for p in ps if 0 < p < 1]
        for p in ps:
            for t in (1, 5, 6, 8):
                q = r_quantile(x, p, t)
                out.write(f"{t} {p.hex()} {q.hex()} {','.join(v.hex() for v in x)}\n")
                count += 1
    sys.stderr.write(f"{count} cases\n")


if __name__ == "__main__":
    main()
