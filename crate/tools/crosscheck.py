#!/usr/bin/env python3
"""Independent SymPy cross-check for the Jacobian-ring pipeline.

Recomputes the graded basis, theta matrices, plethysm dimensions and the
characteristic-variety invariants for the Vandermonde matrix with
lambda = (1..8), using SymPy only.  Used to pin regression fixtures for
values that have no closed form.
"""

import json
import sys
import time
from fractions import Fraction
from itertools import combinations_with_replacement

import sympy
from sympy import symbols, groebner, Poly, QQ, Rational, Matrix

t0 = time.time()


def log(msg):
    print("[%7.1fs] %s" % (time.time() - t0, msg), flush=True)


lam = [1, 2, 3, 4, 5, 6, 7, 8]

xs = symbols("x0:8")
ys = symbols("y1:5")
gens12 = list(xs) + list(ys)

f = [sum(lam[j] ** i * xs[j] ** 2 for j in range(8)) for i in range(4)]
F = sum(ys[i] * f[i] for i in range(4))

partials = [sympy.diff(F, v) for v in gens12]
log("computing Groebner basis of the Jacobian ideal over QQ (grlex)...")
G = groebner(partials, *gens12, order="grlex", domain=QQ)
log("GB has %d elements" % len(G.exprs))


def is_h_invariant(exps):
    # exps: 12-tuple; x-degrees are exps[0..7]
    for i in range(7):
        if (exps[i] + exps[i + 1]) % 2 != 0:
            return False
    if (exps[0] + exps[7]) % 2 != 0:
        return False
    return True


def nf(p):
    return G.reduce(p)[1]


def monomials_of_degree(vars_, d):
    res = []
    for combo in combinations_with_replacement(range(len(vars_)), d):
        m = sympy.Integer(1)
        for i in combo:
            m *= vars_[i]
        res.append(m)
    return res


basis = []
for p in range(4):
    comp = []
    xmons = monomials_of_degree(xs, 2 * p)
    ymons = monomials_of_degree(ys, p)
    for xm in xmons:
        for ym in ymons:
            mon = xm * ym
            exps = Poly(mon, *gens12).monoms()[0]
            if not is_h_invariant(exps):
                continue
            if sympy.expand(nf(mon) - mon) == 0:
                comp.append(mon)
    # canonical order: grlex descending
    comp.sort(key=lambda m: Poly(m, *gens12, domain=QQ).monoms()[0], reverse=True)
    basis.append(comp)
    log("basis R_%d: dim %d" % (p, len(comp)))

dims = [len(c) for c in basis]
print("GRADED_DIMS", dims, flush=True)
flat = [m for c in basis for m in c]
assert len(flat) == 20
print("R1_BASIS", [str(m) for m in basis[1]], flush=True)
print("R2_BASIS", [str(m) for m in basis[2]], flush=True)
print("R3_BASIS", [str(m) for m in basis[3]], flush=True)

mon_index = {}
for k, m in enumerate(flat):
    mon_index[Poly(m, *gens12).monoms()[0]] = k


def poly2vec(p):
    r = nf(sympy.expand(p))
    vec = [Rational(0)] * 20
    if r == 0:
        return vec
    pp = Poly(r, *gens12, domain=QQ)
    for mono, coeff in zip(pp.monoms(), pp.coeffs()):
        if mono in mon_index:
            vec[mon_index[mono]] = coeff
        else:
            raise RuntimeError("off-basis residue %s" % (mono,))
    return vec


log("building theta matrices...")
thetamats = []
for j in range(9):
    w = basis[1][j]
    rows = [poly2vec(w * b) for b in flat]
    thetamats.append(Matrix(rows))
log("theta matrices done")

# commutativity sanity
for a in range(9):
    for b in range(a + 1, 9):
        assert thetamats[a] * thetamats[b] == thetamats[b] * thetamats[a]
log("theta commutators vanish")


def ijpos(n, i, j):
    if i > j:
        i, j = j, i
    p = n - i + 1
    total = n * (n + 1) // 2
    return total - p * (p + 1) // 2 + (j - i) + 1


def symm2imthe(th, pos, pos2ij20):
    i, j = pos2ij20[pos]
    res = [Rational(0)] * 210
    # mu(b_i b_j) = b_i mu(b_j) + mu(b_i) b_j
    for k in range(1, 21):
        c = thetamats[th][j - 1, k - 1]
        if c != 0:
            res[ijpos(20, i, k) - 1] += c
        c = thetamats[th][i - 1, k - 1]
        if c != 0:
            res[ijpos(20, k, j) - 1] += c
    return res


pos2ij20 = {}
for i in range(1, 21):
    for j in range(i, 21):
        pos2ij20[ijpos(20, i, j)] = (i, j)


def symm2image(rows):
    ims = []
    for v in rows:
        for th in range(9):
            im = [Rational(0)] * 210
            for p, c in enumerate(v):
                if c != 0:
                    iv = symm2imthe(th, p + 1, pos2ij20)
                    for q in range(210):
                        if iv[q] != 0:
                            im[q] += c * iv[q]
            ims.append(im)
    M = Matrix(ims)
    return M.rref()[0], M.rank()


U51 = []
for i in range(1, 10):
    v = [Rational(0)] * 210
    v[ijpos(20, 1, 1 + i) - 1] = 1
    U51.append(v)
log("computing U42 = image(U51)...")
R42, dimU42 = symm2image(U51)
print("DIM_U42", dimU42, flush=True)
log("computing U33 = image(U42)...")
rows42 = [list(R42.row(r)) for r in range(dimU42)]
R33, dimU33 = symm2image(rows42)
print("DIM_U33", dimU33, flush=True)

# ---- first characteristic variety ----
log("building charvar1 equations...")
zs = symbols("z1:10")
eqs = []
# M[l][k] over pair positions l, R2-coordinates k
pos2ij9 = {}
for i in range(1, 10):
    for j in range(i, 10):
        pos2ij9[ijpos(9, i, j)] = (i, j)
Mrows = []
for l in range(1, 46):
    i, j = pos2ij9[l]
    vec = poly2vec(basis[1][i - 1] * basis[1][j - 1])
    Mrows.append([vec[10 + k] for k in range(9)])
eqs = []
for l in range(9):
    e = sympy.Integer(0)
    for pos in range(1, 46):
        i, j = pos2ij9[pos]
        la = 1 if i == j else 2
        e += la * Mrows[pos - 1][l] * zs[i - 1] * zs[j - 1]
    eqs.append(sympy.expand(e))

# sanity: evaluation identity at one random point
import random

random.seed(1)
zv = [Rational(random.randint(-5, 5), random.randint(1, 4)) for _ in range(9)]
gen = sum(zv[i] * basis[1][i] for i in range(9))
sq = poly2vec(sympy.expand(gen * gen))
for l in range(9):
    lhs = eqs[l].subs(list(zip(zs, zv)))
    assert sympy.nsimplify(lhs) == sq[10 + l], (l, lhs, sq[10 + l])
log("charvar1 evaluation identity OK")

# second characteristic variety cubic + identity check
pos2ijk9 = {}


def ijkpos(i, j, k):
    s = sorted([i, j, k])
    i_, j_, k_ = s
    offs = 0
    for l in range(1, i_):
        p = 10 - l
        offs += p * (p + 1) // 2
    p0 = 9 - i_ + 1
    j0 = j_ - i_ + 1
    k0 = k_ - i_ + 1
    p0_ = p0 - j0 + 1
    offs2 = p0 * (p0 + 1) // 2 - p0_ * (p0_ + 1) // 2 + (k0 - j0) + 1
    return offs + offs2


for i in range(1, 10):
    for j in range(i, 10):
        for k in range(j, 10):
            pos2ijk9[ijkpos(i, j, k)] = (i, j, k)
assert len(pos2ijk9) == 165 and max(pos2ijk9) == 165

g = sympy.Integer(0)
for pos in range(1, 166):
    i, j, k = pos2ijk9[pos]
    v = poly2vec(basis[1][i - 1] * basis[1][j - 1] * basis[1][k - 1])[19]
    nset = len({i, j, k})
    la = {1: 1, 2: 3, 3: 6}[nset]
    g += la * v * zs[i - 1] * zs[j - 1] * zs[k - 1]
g = sympy.expand(g)
cube = poly2vec(sympy.expand(gen * gen * gen))[19]
assert sympy.nsimplify(g.subs(list(zip(zs, zv)))) == cube
log("charvar2 evaluation identity OK")

# ---- dimension / genus via Hilbert series over GF(32003) ----
log("Groebner basis of charvar1 over GF(32003), grevlex...")
Gp = groebner(eqs, *zs, order="grevlex", modulus=32003)
log("charvar1 GB mod p has %d elements" % len(Gp.exprs))
# NB: Poly.monoms() sorts by the *default* (lex) order regardless of the
# order the basis was computed in, so take the grevlex max explicitly.
from sympy.polys.orderings import grevlex as grevlex_key

lead = [
    max(Poly(e, *zs, modulus=32003).monoms(), key=grevlex_key)
    for e in Gp.exprs
]


def minimalize(gens):
    out = []
    for g1 in gens:
        if any(
            g2 != g1 and all(a <= b for a, b in zip(g2, g1)) for g2 in gens
        ):
            continue
        if g1 not in out:
            out.append(g1)
    return out


def hilbert_numerator(gens, n):
    gens = minimalize(gens)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # pure powers?
    if all(sum(1 for e in g if e > 0) == 1 for g in gens):
        num = [1]
        for g in gens:
            d = sum(g)
            # multiply by (1 - t^d)
            new = num + [0] * d
            for i, c in enumerate(num):
                new[i + d] -= c
            num = new
        return num
    # pivot: most frequent variable among those in a mixed generator
    # (a pure-power pivot can leave the ideal unchanged and loop forever)
    counts = [sum(1 for g in gens if g[i] > 0) for i in range(n)]
    cand = [i for i in range(n)
            if any(g[i] > 0 and sum(1 for e in g if e > 0) > 1 for g in gens)]
    piv = max(cand, key=lambda i: counts[i])
    # I + (x_piv)
    e = tuple(1 if i == piv else 0 for i in range(n))
    a = hilbert_numerator(gens + [e], n)
    # I : x_piv
    quot = [tuple(max(0, g[i] - (1 if i == piv else 0)) for i in range(n)) for g in gens]
    b = hilbert_numerator(quot, n)
    res = [0] * max(len(a), len(b) + 1)
    for i, c in enumerate(a):
        res[i] += c
    for i, c in enumerate(b):
        res[i + 1] += c
    return res


def poly_eval_at_1(num):
    return sum(num)


num = hilbert_numerator(lead, 9)
# cancel (1-t) factors
cancel = 0
while sum(num) == 0 and any(c != 0 for c in num):
    # divide by (1 - t): synthetic
    out = []
    acc = 0
    for c in num:
        acc += c
        out.append(acc)
    # division by (1-t): num(t) = (1-t) q(t) -> q_k = sum_{i<=k} num_i
    assert out[-1] == 0
    num = out[:-1]
    cancel += 1
d = 9 - cancel  # Krull dimension
projdim = d - 1
print("CHARVAR1_PROJ_DIM", projdim, flush=True)
# Hilbert polynomial P(m) = sum_k num_k * C(m-k+d-1, d-1); evaluate P(0)
m = sympy.Symbol("m")
P = sympy.Integer(0)
for k, c in enumerate(num):
    P += c * sympy.binomial(m - k + d - 1, d - 1)
P = sympy.expand(P)
P0 = P.subs(m, 0)
genus = (-1) ** projdim * (P0 - 1)
print("CHARVAR1_GENUS", genus, flush=True)
print("CHARVAR1_HILBERT_NUMERATOR", num, flush=True)

# brute-force sanity for the Hilbert function at a couple of degrees
def hf_brute(lead, n, deg):
    cnt = 0
    for combo in combinations_with_replacement(range(n), deg):
        e = [0] * n
        for i in combo:
            e[i] += 1
        if not any(all(a >= b for a, b in zip(e, g)) for g in lead):
            cnt += 1
    return cnt


for deg in (6, 8, 10):
    bf = hf_brute(minimalize(lead), 9, deg)
    pv = P.subs(m, deg)
    print("HF_CHECK deg=%d brute=%d poly=%s" % (deg, bf, pv), flush=True)

log("all done")
