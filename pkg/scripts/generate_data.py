"""Regenerate the bundled category files in src/fcat/data/.

Each file lists *every* admissible F/R entry explicitly (the loader treats
absent entries as zero).  Values follow the standard gauge choices for these
models.
"""

import cmath
import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "fcat" / "data"

PHI = (1 + math.sqrt(5)) / 2


def expand(name, labels, unit, dual, fuse, fsym, rsym, dims, tol=1e-9):
    """Enumerate all admissible (multiplicity-free) F/R entries of a model."""
    def N(a, b, c):
        return 1 if c in fuse(a, b) else 0

    n_rows = [[a, b, c, 1] for a in labels for b in labels for c in fuse(a, b)]
    f_rows = []
    for a in labels:
        for b in labels:
            for c in labels:
                for d in labels:
                    for e in fuse(a, b):
                        if not N(e, c, d):
                            continue
                        for f in fuse(b, c):
                            if not N(a, f, d):
                                continue
                            val = complex(fsym(a, b, c, d, e, f))
                            f_rows.append([a, b, c, d, e, f, 0, 0, 0, 0,
                                           val.real, val.imag])
    r_rows = None
    if rsym is not None:
        r_rows = []
        for a in labels:
            for b in labels:
                for c in fuse(a, b):
                    val = complex(rsym(a, b, c))
                    r_rows.append([a, b, c, 0, 0, val.real, val.imag])
    doc = {
        "name": name,
        "labels": labels,
        "unit": unit,
        "dual": dual,
        "N": n_rows,
        "F": f_rows,
        "dims": {k: [v.real, v.imag] for k, v in
                 ((k, complex(v)) for k, v in dims.items())},
        "tol": tol,
    }
    if r_rows is not None:
        doc["R"] = r_rows
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(doc, indent=1), encoding="utf-8")
    print(f"wrote {path} ({len(f_rows)} F entries)")


def fibonacci():
    labels = ["1", "tau"]

    def fuse(a, b):
        if a == "1":
            return [b]
        if b == "1":
            return [a]
        return ["1", "tau"]

    def fsym(a, b, c, d, e, f):
        if (a, b, c, d) == ("tau",) * 4:
            m = {("1", "1"): 1 / PHI, ("1", "tau"): 1 / math.sqrt(PHI),
                 ("tau", "1"): 1 / math.sqrt(PHI), ("tau", "tau"): -1 / PHI}
            return m[(e, f)]
        return 1.0

    def rsym(a, b, c):
        if (a, b) == ("tau", "tau"):
            return cmath.exp(-4j * cmath.pi / 5) if c == "1" \
                else cmath.exp(3j * cmath.pi / 5)
        return 1.0

    expand("fibonacci", labels, "1", {"1": "1", "tau": "tau"},
           fuse, fsym, rsym, {"1": 1.0, "tau": PHI})


def ising():
    labels = ["1", "sigma", "psi"]

    def fuse(a, b):
        if a == "1":
            return [b]
        if b == "1":
            return [a]
        if (a, b) == ("sigma", "sigma"):
            return ["1", "psi"]
        if "sigma" in (a, b):
            return ["sigma"]
        return ["1"]   # psi x psi

    def fsym(a, b, c, d, e, f):
        if (a, b, c, d) == ("sigma",) * 4:
            sign = -1 if (e, f) == ("psi", "psi") else 1
            return sign / math.sqrt(2)
        if (a, b, c, d) in (("psi", "sigma", "psi", "sigma"),
                            ("sigma", "psi", "sigma", "psi")):
            return -1.0
        return 1.0

    def rsym(a, b, c):
        if (a, b) == ("sigma", "sigma"):
            return cmath.exp(-1j * cmath.pi / 8) if c == "1" \
                else cmath.exp(3j * cmath.pi / 8)
        if (a, b) in (("sigma", "psi"), ("psi", "sigma")):
            return -1j
        if (a, b) == ("psi", "psi"):
            return -1.0
        return 1.0

    expand("ising", labels, "1",
           {"1": "1", "sigma": "sigma", "psi": "psi"},
           fuse, fsym, rsym,
           {"1": 1.0, "sigma": math.sqrt(2), "psi": 1.0})


def vec_z2():
    labels = ["1", "e"]

    def fuse(a, b):
        return ["1"] if a == b else ["e"]

    expand("vec_z2", labels, "1", {"1": "1", "e": "e"},
           fuse, lambda *args: 1.0, lambda *args: 1.0,
           {"1": 1.0, "e": 1.0})


def vec_z3():
    labels = ["1", "w", "w2"]
    val = {"1": 0, "w": 1, "w2": 2}
    inv = {v: k for k, v in val.items()}

    def fuse(a, b):
        return [inv[(val[a] + val[b]) % 3]]

    expand("vec_z3", labels, "1", {"1": "1", "w": "w2", "w2": "w"},
           fuse, lambda *args: 1.0, None,
           {"1": 1.0, "w": 1.0, "w2": 1.0})


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    fibonacci()
    ising()
    vec_z2()
    vec_z3()
