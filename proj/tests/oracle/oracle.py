"""Independent reference computations for the golden files.

Builds the O-windows, the HF windows and the truncated ech complexes from
scratch (dicts of labels, no shared code with the C++ engine) and measures
homology with sympy's Smith normal form. Only used to produce data/golden.
"""

import json
import sys
from itertools import product
from pathlib import Path

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

O_VALUES = [0, 1, -1, 2]  # 2 stands for {1, -1}


def o_abs(o):
    return {0: 0, 1: 1, -1: 1, 2: 2}[o]


def boundary_star(m, o):
    if o == 0:
        return {}
    if o == 1:
        return {(m, 0): 1, (m + 1, 0): 1}
    if o == -1:
        return {(m, 0): 1, (m - 1, 0): 1}
    out = {}
    for key, c in [((m, -1), 1), ((m, 1), -1), ((m + 1, -1), 1), ((m - 1, 1), -1)]:
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def o_window(L):
    cells = []
    for m in range(-L, L + 1):
        for o in O_VALUES:
            if abs(m) + 2 * o_abs(o) < L:
                cells.append((m, o))
    return cells


class Complex:
    """cells: list of hashable labels; deg: label -> int; d: label -> {label: coef}."""

    def __init__(self, cells, deg, d, modulus=0):
        self.cells = list(cells)
        self.deg = deg
        self.d = d
        self.modulus = modulus

    def key(self, n):
        return n % self.modulus if self.modulus else n

    def slot(self, k):
        return [c for c in self.cells if self.key(self.deg[c]) == k]

    def keys(self):
        return sorted({self.key(self.deg[c]) for c in self.cells})


def handle_complex(g, L):
    tuples = []
    for combo in product(o_window(L + 1), repeat=g):
        if sum(abs(m) + 2 * o_abs(o) for m, o in combo) < L:
            tuples.append(combo)
    present = set(tuples)
    deg = {t: sum(o_abs(o) for _, o in t) for t in tuples}
    d = {}
    for t in tuples:
        out = {}
        sign = 1
        for p, (m, o) in enumerate(t):
            for (m2, o2), c in boundary_star(m, o).items():
                t2 = t[:p] + ((m2, o2),) + t[p + 1:]
                if t2 in present:
                    out[t2] = out.get(t2, 0) + sign * c
            if o_abs(o) % 2:
                sign = -sign
        d[t] = {k: v for k, v in out.items() if v}
    return Complex(tuples, deg, d)


def hf_window(doc, a, b):
    p = int(doc["p"])
    names = [x["name"] for x in doc["generators"]]
    grading = {x["name"]: int(x["grading"]) for x in doc["generators"]}
    edges = {}
    for e in doc["differential"]:
        edges.setdefault(e["from"], []).append((e["to"], int(e["t_power"]), int(e["coef"])))
    cells, deg, d = [], {}, {}
    for i in range(a, b + 1):
        for x in names:
            cells.append((x, i))
            deg[(x, i)] = grading[x] + 2 * i
    for (x, i) in cells:
        out = {}
        for y, k, c in edges.get(x, []):
            if i - k >= a:
                out[(y, i - k)] = out.get((y, i - k), 0) + c
        d[(x, i)] = {k: v for k, v in out.items() if v}
    return Complex(cells, deg, d, p)


def restrict(c, keep):
    cells = [x for x in c.cells if keep(x)]
    s = set(cells)
    d = {x: {y: v for y, v in c.d[x].items() if y in s} for x in cells}
    return Complex(cells, c.deg, d, c.modulus)


def flavor(c, name):
    if name == "inf":
        return c
    if name == "minus":
        return restrict(c, lambda x: x[1] <= -1)
    # the quotient by the i <= -1 part: drop those cells and their terms
    return restrict(c, lambda x: x[1] >= 0)


def tensor(c, w):
    cells, deg, d = [], {}, {}
    for x in c.cells:
        for t in w.cells:
            cells.append((x, t))
            deg[(x, t)] = c.deg[x] + w.deg[t]
    for x in c.cells:
        for t in w.cells:
            out = {}
            for y, v in c.d[x].items():
                out[(y, t)] = out.get((y, t), 0) + v
            s = -1 if c.deg[x] % 2 else 1
            for t2, v in w.d[t].items():
                out[(x, t2)] = out.get((x, t2), 0) + s * v
            d[(x, t)] = {k: v for k, v in out.items() if v}
    return Complex(cells, deg, d, c.modulus)


# --- integer linear algebra -------------------------------------------------

def column_echelon(cols, nrows):
    """Column operations to echelon form. Returns (basis columns, unimodular
    transform columns for the zero part) i.e. (image basis, kernel basis)."""
    A = [list(c) for c in cols]
    n = len(A)
    U = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    k = 0
    for r in range(nrows):
        while True:
            nz = [j for j in range(k, n) if A[j][r] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(A[j][r]))
            A[k], A[piv] = A[piv], A[k]
            U[k], U[piv] = U[piv], U[k]
            done = True
            for j in range(k + 1, n):
                if A[j][r]:
                    q = A[j][r] // A[k][r]
                    A[j] = [x - q * y for x, y in zip(A[j], A[k])]
                    U[j] = [x - q * y for x, y in zip(U[j], U[k])]
                    if A[j][r]:
                        done = False
            if done:
                k += 1
                break
        if k == n:
            break
    return A[:k], U[k:]


def express(basis, v):
    v = list(v)
    coeffs = []
    for b in basis:
        r = next(i for i, x in enumerate(b) if x != 0)
        q, rem = divmod(v[r], b[r])
        assert rem == 0, "vector not in lattice"
        coeffs.append(q)
        v = [x - q * y for x, y in zip(v, b)]
    assert not any(v), "vector not in lattice"
    return coeffs


def quotient_type(gens, rel, dim):
    """(span(gens) + span(rel)) / span(rel) as (free rank, torsion list)."""
    basis, _ = column_echelon(list(gens) + list(rel), dim)
    r = len(basis)
    if r == 0:
        return 0, []
    if not rel:
        return r, []
    X = Matrix([express(basis, v) for v in rel]).T
    D = smith_normal_form(X, domain=ZZ)
    diag = [abs(D[i, i]) for i in range(min(D.shape))]
    nonzero = [x for x in diag if x != 0]
    torsion = sorted(int(x) for x in nonzero if x != 1)
    return r - len(nonzero), torsion


def columns(c, src, dst):
    idx = {x: i for i, x in enumerate(dst)}
    out = []
    for x in src:
        col = [0] * len(dst)
        for y, v in c.d[x].items():
            if y in idx:
                col[idx[y]] += v
        out.append(col)
    return out


def cycles(c, k):
    here = c.slot(k)
    below = c.slot(c.key(k - 1))
    d_out = columns(c, here, below)
    # kernel of d_out: rows are 'below', columns are 'here'
    _, ker = column_echelon(d_out, len(below))
    return here, ker


def boundaries(c, k):
    here = c.slot(k)
    above = c.slot(c.key(k + 1))
    return columns(c, above, here)


def homology(c, k, p=0):
    if p:
        return homology_mod_p(c, k, p)
    here, ker = cycles(c, k)
    return quotient_type(ker, boundaries(c, k), len(here))


def _rank_fp(cols, nrows, p):
    A = [[x % p for x in col] for col in cols]
    rank = 0
    for r in range(nrows):
        piv = next((j for j in range(rank, len(A)) if A[j][r]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][r], -1, p)
        A[rank] = [(x * inv) % p for x in A[rank]]
        for j in range(len(A)):
            if j != rank and A[j][r]:
                f = A[j][r]
                A[j] = [(x - f * y) % p for x, y in zip(A[j], A[rank])]
        rank += 1
    return rank


def homology_mod_p(c, k, p):
    here = c.slot(k)
    below = c.slot(c.key(k - 1))
    above = c.slot(c.key(k + 1))
    r_out = _rank_fp(columns(c, here, below), len(below), p)
    r_in = _rank_fp(columns(c, above, here), len(here), p)
    return 0, [p] * (len(here) - r_out - r_in)


def stable_image(c0, c1, k):
    """Image of H_k(c0) in H_k(c1); c0 is a labelled subcomplex of c1."""
    here1 = c1.slot(k)
    idx = {x: i for i, x in enumerate(here1)}
    here0, ker = cycles(c0, k)
    gens = []
    for z in ker:
        v = [0] * len(here1)
        for x, coef in zip(here0, z):
            v[idx[x]] += coef
        gens.append(v)
    return quotient_type(gens, boundaries(c1, k), len(here1))


def stable_image_mod_p(c0, c1, k, p):
    here1 = c1.slot(k)
    idx = {x: i for i, x in enumerate(here1)}
    here0 = c0.slot(k)
    below0 = c0.slot(c0.key(k - 1))
    # cycles of c0 over F_p, pushed into c1, modulo boundaries of c1 over F_p
    d_out = [[x % p for x in col] for col in columns(c0, here0, below0)]
    ker = kernel_fp(d_out, len(below0), p)
    gens = []
    for z in ker:
        v = [0] * len(here1)
        for x, coef in zip(here0, z):
            v[idx[x]] = (v[idx[x]] + coef) % p
        gens.append(v)
    bnd = columns(c1, c1.slot(c1.key(k + 1)), here1)
    both = _rank_fp(gens + bnd, len(here1), p)
    return 0, [p] * (both - _rank_fp(bnd, len(here1), p))


def kernel_fp(cols, nrows, p):
    n = len(cols)
    # solve sum_j x_j cols[j] = 0 over F_p by row reduction of the nrows x n matrix
    M = [[cols[j][r] % p for j in range(n)] for r in range(nrows)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, nrows) if M[r][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = pow(M[row][col], -1, p)
        M[row] = [(x * inv) % p for x in M[row]]
        for r in range(nrows):
            if r != row and M[r][col]:
                f = M[r][col]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-M[r][f]) % p
        basis.append(v)
    return basis


def group_json(t):
    free, tors = t
    return {"free_rank": free, "torsion": [str(x) for x in tors]}


# --- golden tables ----------------------------------------------------------

def o_window_table(L_max=6):
    rows = []
    for L in range(1, L_max + 1):
        cells = o_window(L)
        deg = {c: o_abs(c[1]) for c in cells}
        s = set(cells)
        d = {c: {k: v for k, v in boundary_star(*c).items() if k in s} for c in cells}
        cx = Complex(cells, deg, d)
        rows.append({"L": L, "size": len(cells),
                     "groups": [group_json(homology(cx, k)) for k in range(3)]})
    return {"table": "o_window", "rows": rows}


def corpus_golden(doc, g, a=-2, b=2, coeffs=("z",)):
    L = 3 * g + 1
    base = hf_window(doc, a, b)
    w0, w1 = handle_complex(g, L), handle_complex(g, L + 1)
    core = Complex([tuple((0, o) for o in os) for os in product([0, 1], repeat=g)],
                   {}, {}, 0)
    core.deg = {t: sum(o for _, o in t) for t in core.cells}
    core.d = {t: {} for t in core.cells}
    out = {"g": g, "L": L, "window": [a, b], "flavors": {}}
    for fl in ("inf", "minus", "plus"):
        c = flavor(base, fl)
        e0, e1, bc = tensor(c, w0), tensor(c, w1), tensor(c, core)
        keys = sorted(set(e0.keys()) | set(bc.keys()))
        per = {}
        for coeff in coeffs:
            rows = []
            for k in keys:
                if coeff == "z":
                    trunc = homology(e0, k)
                    stable = stable_image(e0, e1, k)
                    vhat = homology(bc, k)
                elif coeff == "q":
                    trunc = (homology(e0, k)[0], [])
                    stable = (stable_image(e0, e1, k)[0], [])
                    vhat = (homology(bc, k)[0], [])
                else:
                    p = int(coeff[1:])
                    trunc = homology_mod_p(e0, k, p)
                    stable = stable_image_mod_p(e0, e1, k, p)
                    vhat = homology_mod_p(bc, k, p)
                rows.append({"grading": k, "truncated": group_json(trunc), "stable": group_json(stable),
                             "hf_vhat": group_json(vhat)})
            per[coeff] = rows
        out["flavors"][fl] = per
    return out


def main(root):
    root = Path(root)
    golden = root / "data" / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    (golden / "o_window.json").write_text(json.dumps(o_window_table(), indent=2) + "\n")
    plan = {
        "trivial": [(1, ("z", "q", "f2")), (2, ("z",))],
        "acyclic": [(1, ("z", "q", "f2")), (2, ("z",))],
        "graded_p4": [(1, ("z", "q", "f2"))],
        "stress_g2": [(1, ("z",))],
    }
    for name, runs in plan.items():
        doc = json.loads((root / "data" / "corpus" / (name + ".json")).read_text())
        result = {"input": name + ".json", "runs": []}
        for g, coeffs in runs:
            result["runs"].append(corpus_golden(doc, g, coeffs=coeffs))
            print(name, "g =", g, "done", file=sys.stderr)
        (golden / (name + ".json")).write_text(json.dumps(result, indent=2) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parents[2])
