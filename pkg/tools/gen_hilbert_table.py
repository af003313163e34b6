"""Generate the embedded Hilbert class polynomial table.

Offline tool, not imported by the package.  Uses mpmath to evaluate the
j-invariant at the reduced forms of each discriminant and rounds the
product of the linear factors.  Every polynomial is computed twice at
different working precisions and both results must agree.

    python tools/gen_hilbert_table.py src/ellperiods/data/hilbert.txt
"""

import hashlib
import math
import sys

from mpmath import mp, mpc, mpf, kleinj, nint, pi, sqrt


def is_fundamental(disc):
    # disc > 0 stands for the negative discriminant -disc
    def squarefree(m):
        k = 2
        while k * k <= m:
            if m % (k * k) == 0:
                return False
            k += 1
        return True

    if disc % 4 == 3:
        return squarefree(disc)
    if disc % 4 == 0:
        m = disc // 4
        return m % 4 in (1, 2) and squarefree(m)
    return False


def reduced_forms(disc):
    forms = []
    a = 1
    while 3 * a * a <= disc:
        for b in range(-a + 1, a + 1):
            if (b * b + disc) % (4 * a):
                continue
            c = (b * b + disc) // (4 * a)
            if c < a:
                continue
            if b < 0 and c == a:
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def class_poly(disc, forms, extra):
    digits = sum(float(pi) * math.sqrt(disc) / (a * math.log(10)) for a, _, _ in forms)
    mp.dps = int(digits) + 10 * len(forms) + 40 + extra
    coeffs = [mpc(1)]
    for a, b, _ in forms:
        tau = mpc(-b, sqrt(mpf(disc))) / (2 * a)
        j = 1728 * kleinj(tau)
        nxt = [mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= c * j
        coeffs = nxt
    out = []
    for c in coeffs:
        r = nint(c.real)
        if abs(c.real - r) > mpf(10) ** -20 or abs(c.imag) > mpf(10) ** -20:
            raise RuntimeError(f"precision loss for disc {disc}")
        out.append(int(r))
    return out  # low degree first


def main(path, max_disc=10000, max_h=16):
    lines = []
    for disc in range(3, max_disc + 1):
        if not is_fundamental(disc):
            continue
        forms = reduced_forms(disc)
        if len(forms) > max_h:
            continue
        p1 = class_poly(disc, forms, 0)
        p2 = class_poly(disc, forms, 25)
        if p1 != p2:
            raise RuntimeError(f"unstable coefficients for disc {disc}")
        h = len(forms)
        fields = [str(disc), str(h)] + [str(c) for c in reversed(p1)]
        lines.append(" ".join(fields))
    text = "\n".join(lines) + "\n"
    with open(path, "w") as fh:
        fh.write(text)
    with open(path + ".sha256", "w") as fh:
        fh.write(hashlib.sha256(text.encode()).hexdigest() + "\n")
    print(f"{len(lines)} polynomials written to {path}")


if __name__ == "__main__":
    main(sys.argv[1])
