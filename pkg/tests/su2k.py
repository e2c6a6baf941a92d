"""Generator for quantum-group SU(2)_k category documents.

An independent data source for the engine: F-symbols from q-deformed
Racah 6j coefficients, R-symbols from the universal R-matrix phases, and
quantum dimensions in the spherical (sign-carrying) gauge
``d_j = (-1)^{2j} [2j+1]_q``.  Half-integer spins are self-dual with
Frobenius-Schur indicator -1, which none of the bundled categories
exercise.  Labels are twice-spin integers ``0..k``.
"""

import cmath
import itertools
import math


def su2k_document(k: int) -> dict:
    Kq = k + 2

    def qn(n):
        return math.sin(n * math.pi / Kq) / math.sin(math.pi / Kq)

    def qfact(n):
        out = 1.0
        for m in range(1, n + 1):
            out *= qn(m)
        return out

    labels = list(range(k + 1))

    def adm(a, b, c):
        return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b \
            and a + b + c <= 2 * k

    def tri(a, b, c):
        return math.sqrt(qfact((-a + b + c) // 2) * qfact((a - b + c) // 2)
                         * qfact((a + b - c) // 2) / qfact((a + b + c) // 2 + 1))

    def sixj(a, b, e, c, d, f):
        if not (adm(a, b, e) and adm(e, c, d) and adm(b, c, f) and adm(a, f, d)):
            return 0.0
        pref = tri(a, b, e) * tri(e, c, d) * tri(b, c, f) * tri(a, f, d)
        z0 = max(a + b + e, e + c + d, b + c + f, a + f + d) // 2
        z1 = min(a + b + c + d, a + e + c + f, b + e + d + f) // 2
        total = 0.0
        for z in range(z0, z1 + 1):
            den = (qfact(z - (a + b + e) // 2) * qfact(z - (e + c + d) // 2)
                   * qfact(z - (b + c + f) // 2) * qfact(z - (a + f + d) // 2)
                   * qfact((a + b + c + d) // 2 - z)
                   * qfact((a + e + c + f) // 2 - z)
                   * qfact((b + e + d + f) // 2 - z))
            total += (-1) ** z * qfact(z + 1) / den
        return pref * total

    def fsym(a, b, c, d, e, f):
        return ((-1) ** ((a + b + c + d) // 2)
                * math.sqrt(qn(e + 1) * qn(f + 1)) * sixj(a, b, e, c, d, f))

    def rsym(a, b, c):
        phase = cmath.exp(1j * math.pi
                          * (c * (c + 2) - a * (a + 2) - b * (b + 2)) / (4 * Kq))
        return (-1.0) ** (((a + b - c) // 2) % 2) * phase

    ids = [str(j) for j in labels]
    doc = {
        "name": f"su2_{k}",
        "labels": ids,
        "unit": "0",
        "dual": {i: i for i in ids},
        "N": [[str(a), str(b), str(c), 1]
              for a in labels for b in labels for c in labels if adm(a, b, c)],
        "F": [],
        "R": [],
        "dims": {str(j): [(-1) ** j * qn(j + 1), 0.0] for j in labels},
    }
    for a, b, c, d in itertools.product(labels, repeat=4):
        for e in labels:
            if not (adm(a, b, e) and adm(e, c, d)):
                continue
            for f in labels:
                if not (adm(b, c, f) and adm(a, f, d)):
                    continue
                doc["F"].append([str(a), str(b), str(c), str(d), str(e), str(f),
                                 0, 0, 0, 0, fsym(a, b, c, d, e, f), 0.0])
    for a, b, c in itertools.product(labels, repeat=3):
        if adm(a, b, c):
            v = rsym(a, b, c)
            doc["R"].append([str(a), str(b), str(c), 0, 0, v.real, v.imag])
    return doc
