#!/usr/bin/env python3
"""One-time generator for the molecular-integral fixtures used by the test suite.

Implements a minimal STO-3G restricted Hartree-Fock pipeline (McMurchie-
Davidson integrals over s/p Gaussians, closed-shell SCF with DIIS, MO
transformation) and writes FCIDUMP files plus a JSON of reference values
(SCF energies, exact-diagonalization energies from an independent
determinant-CI oracle) that the C++ tests freeze as golden numbers.

Only s and p shells are needed for H, C, O and Mg. Run from this directory:

    python3 generate_fixtures.py

The generated .fcidump / .manifest / fixture_values.json files are committed;
this script is kept for provenance and regeneration.
"""

import itertools
import json
import math
import os

import numpy as np
from scipy.special import hyp1f1

ANGSTROM_TO_BOHR = 1.0 / 0.52917721092

# STO-3G exponents and contraction coefficients (Basis Set Exchange).
STO3G = {
    "H": [("S", [3.42525091, 0.62391373, 0.16885540],
           [[0.15432897, 0.53532814, 0.44463454]])],
    "C": [("S", [71.6168370, 13.0450960, 3.5305122],
           [[0.15432897, 0.53532814, 0.44463454]]),
          ("SP", [2.9412494, 0.6834831, 0.2222899],
           [[-0.09996723, 0.39951283, 0.70011547],
            [0.15591627, 0.60768372, 0.39195739]])],
    "O": [("S", [130.7093200, 23.8088610, 6.4436083],
           [[0.15432897, 0.53532814, 0.44463454]]),
          ("SP", [5.0331513, 1.1695961, 0.3803890],
           [[-0.09996723, 0.39951283, 0.70011547],
            [0.15591627, 0.60768372, 0.39195739]])],
    "Mg": [("S", [299.2374000, 54.5064700, 14.7515800],
            [[0.15432897, 0.53532814, 0.44463454]]),
           ("SP", [15.1218200, 3.5139870, 1.1428570],
            [[-0.09996723, 0.39951283, 0.70011547],
             [0.15591627, 0.60768372, 0.39195739]]),
           ("SP", [1.3954480, 0.3893260, 0.1523800],
            [[-0.2196204, 0.2255954, 0.9003984],
             [0.0105876, 0.5951670, 0.4620010]])],
}

Z_OF = {"H": 1, "C": 6, "O": 8, "Mg": 12}

CART = {0: [(0, 0, 0)], 1: [(1, 0, 0), (0, 1, 0), (0, 0, 1)]}


def double_factorial(n):
    return 1 if n <= 0 else n * double_factorial(n - 2)


def primitive_norm(alpha, lmn):
    l, m, n = lmn
    num = (2 * alpha / math.pi) ** 0.75 * (4 * alpha) ** ((l + m + n) / 2.0)
    den = math.sqrt(double_factorial(2 * l - 1) * double_factorial(2 * m - 1)
                    * double_factorial(2 * n - 1))
    return num / den


class Shell:
    """Contracted Cartesian shell of a single angular momentum."""

    def __init__(self, center, l, exps, coefs):
        self.center = np.asarray(center, dtype=float)
        self.l = l
        self.exps = np.asarray(exps, dtype=float)
        # Scale contraction coefficients by the primitive norms and then
        # normalize the contracted function (same norm for all components
        # of one shell because only the total angular momentum enters).
        lmn0 = CART[l][0]
        raw = np.asarray(coefs, dtype=float)
        scaled = raw * np.array([primitive_norm(a, lmn0) for a in exps])
        self_overlap = 0.0
        for ci, ai in zip(scaled, self.exps):
            for cj, aj in zip(scaled, self.exps):
                p = ai + aj
                s00 = (math.pi / p) ** 1.5
                # 1D Hermite E(l,l,0) with zero separation gives the
                # angular factor; for like primitives it reduces to
                # double factorials.
                l_, m_, n_ = lmn0
                ang = (double_factorial(2 * l_ - 1) * double_factorial(2 * m_ - 1)
                       * double_factorial(2 * n_ - 1)) / (2 * p) ** (l_ + m_ + n_)
                self_overlap += ci * cj * s00 * ang
        self.coefs = scaled / math.sqrt(self_overlap)

    def n_ao(self):
        return len(CART[self.l])


def build_shells(atoms):
    """atoms: list of (symbol, xyz in bohr). Returns (shells, ao_labels)."""
    shells = []
    for sym, xyz in atoms:
        for kind, exps, coef_sets in STO3G[sym]:
            if kind == "S":
                shells.append(Shell(xyz, 0, exps, coef_sets[0]))
            elif kind == "SP":
                shells.append(Shell(xyz, 0, exps, coef_sets[0]))
                shells.append(Shell(xyz, 1, exps, coef_sets[1]))
    return shells


def hermite_e(l1, l2, a, b, ax, bx):
    """E[i,j,t] Hermite expansion coefficients for one Cartesian direction."""
    p = a + b
    q = a * b / p
    qx = ax - bx
    px = (a * ax + b * bx) / p
    e = np.zeros((l1 + 1, l2 + 1, l1 + l2 + 2))
    e[0, 0, 0] = math.exp(-q * qx * qx)
    for i in range(l1 + 1):
        for j in range(l2 + 1):
            if i == 0 and j == 0:
                continue
            for t in range(i + j + 1):
                if j == 0:
                    val = px - ax
                    prev = e[i - 1, j]
                else:
                    val = px - bx
                    prev = e[i, j - 1]
                acc = val * prev[t]
                if t - 1 >= 0:
                    acc += prev[t - 1] / (2 * p)
                acc += (t + 1) * prev[t + 1]
                if j == 0:
                    e[i, j, t] = acc
                else:
                    e[i, j, t] = acc
    return e


def boys(nmax, x):
    """F_n(x) for n=0..nmax as an array."""
    ns = np.arange(nmax + 1)
    return hyp1f1(ns + 0.5, ns + 1.5, -x) / (2 * ns + 1)


def hermite_r(tmax, umax, vmax, p, pc):
    """Hermite Coulomb integrals R_{t,u,v} (n=0 slice)."""
    nmax = tmax + umax + vmax
    x2 = p * float(pc @ pc)
    f = boys(nmax, x2)
    r = np.zeros((nmax + 1, tmax + 1, umax + 1, vmax + 1))
    for n in range(nmax + 1):
        r[n, 0, 0, 0] = (-2.0 * p) ** n * f[n]
    for total in range(1, tmax + umax + vmax + 1):
        for t in range(min(total, tmax) + 1):
            for u in range(min(total - t, umax) + 1):
                v = total - t - u
                if v < 0 or v > vmax:
                    continue
                for n in range(nmax - total + 1):
                    if t > 0:
                        acc = pc[0] * r[n + 1, t - 1, u, v]
                        if t > 1:
                            acc += (t - 1) * r[n + 1, t - 2, u, v]
                    elif u > 0:
                        acc = pc[1] * r[n + 1, t, u - 1, v]
                        if u > 1:
                            acc += (u - 1) * r[n + 1, t, u - 2, v]
                    else:
                        acc = pc[2] * r[n + 1, t, u, v - 1]
                        if v > 1:
                            acc += (v - 1) * r[n + 1, t, u, v - 2]
                    r[n, t, u, v] = acc
    return r[0]


class PairData:
    """Per-primitive-pair Hermite data for a shell pair."""

    def __init__(self, sh_a, sh_b):
        self.sh_a, self.sh_b = sh_a, sh_b
        self.prims = []
        la, lb = sh_a.l, sh_b.l
        for ca, aa in zip(sh_a.coefs, sh_a.exps):
            for cb, ab in zip(sh_b.coefs, sh_b.exps):
                p = aa + ab
                pcen = (aa * sh_a.center + ab * sh_b.center) / p
                es = [hermite_e(la, lb, aa, ab, sh_a.center[d], sh_b.center[d])
                      for d in range(3)]
                self.prims.append((ca * cb, p, pcen, es))


def shell_pairs(shells):
    pairs = {}
    for i, sa in enumerate(shells):
        for j, sb in enumerate(shells):
            if j > i:
                continue
            pairs[(i, j)] = PairData(sa, sb)
    return pairs


def ao_offsets(shells):
    offs, n = [], 0
    for sh in shells:
        offs.append(n)
        n += sh.n_ao()
    return offs, n


def one_electron(shells, atoms):
    """Overlap, kinetic and nuclear-attraction matrices."""
    offs, nao = ao_offsets(shells)
    S = np.zeros((nao, nao))
    T = np.zeros((nao, nao))
    V = np.zeros((nao, nao))
    charges = [(Z_OF[sym], np.asarray(xyz)) for sym, xyz in atoms]

    def prim_overlap(a, b, acen, bcen, lmn1, lmn2):
        p = a + b
        val = 1.0
        for d in range(3):
            e = hermite_e(lmn1[d], lmn2[d], a, b, acen[d], bcen[d])
            val *= e[lmn1[d], lmn2[d], 0]
        return val * (math.pi / p) ** 1.5

    def prim_kinetic(a, b, acen, bcen, lmn1, lmn2):
        l2, m2, n2 = lmn2
        term = b * (2 * (l2 + m2 + n2) + 3) * prim_overlap(a, b, acen, bcen, lmn1, lmn2)
        term += -2 * b * b * (
            prim_overlap(a, b, acen, bcen, lmn1, (l2 + 2, m2, n2))
            + prim_overlap(a, b, acen, bcen, lmn1, (l2, m2 + 2, n2))
            + prim_overlap(a, b, acen, bcen, lmn1, (l2, m2, n2 + 2)))
        for comp, lv in enumerate((l2, m2, n2)):
            if lv >= 2:
                lowered = list(lmn2)
                lowered[comp] -= 2
                term += -0.5 * lv * (lv - 1) * prim_overlap(a, b, acen, bcen, lmn1, tuple(lowered))
        return term

    for i, sa in enumerate(shells):
        for j, sb in enumerate(shells):
            if j > i:
                continue
            for ia, lmn1 in enumerate(CART[sa.l]):
                for ib, lmn2 in enumerate(CART[sb.l]):
                    mu, nu = offs[i] + ia, offs[j] + ib
                    s = t = v = 0.0
                    for ca, aa in zip(sa.coefs, sa.exps):
                        for cb, ab in zip(sb.coefs, sb.exps):
                            c = ca * cb
                            s += c * prim_overlap(aa, ab, sa.center, sb.center, lmn1, lmn2)
                            t += c * prim_kinetic(aa, ab, sa.center, sb.center, lmn1, lmn2)
                            p = aa + ab
                            pcen = (aa * sa.center + ab * sb.center) / p
                            es = [hermite_e(lmn1[d], lmn2[d], aa, ab,
                                            sa.center[d], sb.center[d]) for d in range(3)]
                            for zc, ccen in charges:
                                r = hermite_r(lmn1[0] + lmn2[0], lmn1[1] + lmn2[1],
                                              lmn1[2] + lmn2[2], p, pcen - ccen)
                                acc = 0.0
                                for tt in range(lmn1[0] + lmn2[0] + 1):
                                    for uu in range(lmn1[1] + lmn2[1] + 1):
                                        for vv in range(lmn1[2] + lmn2[2] + 1):
                                            acc += (es[0][lmn1[0], lmn2[0], tt]
                                                    * es[1][lmn1[1], lmn2[1], uu]
                                                    * es[2][lmn1[2], lmn2[2], vv]
                                                    * r[tt, uu, vv])
                                v += -zc * c * acc * 2 * math.pi / p
                    S[mu, nu] = S[nu, mu] = s
                    T[mu, nu] = T[nu, mu] = t
                    V[mu, nu] = V[nu, mu] = v
    return S, T, V


def electron_repulsion(shells):
    """Full (pq|rs) tensor in chemists' notation."""
    offs, nao = ao_offsets(shells)
    pairs = shell_pairs(shells)
    g = np.zeros((nao, nao, nao, nao))
    nsh = len(shells)
    for i in range(nsh):
        for j in range(i + 1):
            pab = pairs[(i, j)]
            la, lb = shells[i].l, shells[j].l
            na, nb = shells[i].n_ao(), shells[j].n_ao()
            for k in range(i + 1):
                lmax = k if k < i else j
                for l in range(lmax + 1):
                    pcd = pairs[(k, l)]
                    lc, ld = shells[k].l, shells[l].l
                    nc, nd = shells[k].n_ao(), shells[l].n_ao()
                    block = np.zeros((na, nb, nc, nd))
                    for c1, p, pcen, eab in pab.prims:
                        for c2, q, qcen, ecd in pcd.prims:
                            alpha = p * q / (p + q)
                            rmax = (la + lb, la + lb, la + lb)
                            smax = (lc + ld, lc + ld, lc + ld)
                            r = hermite_r(rmax[0] + smax[0], rmax[1] + smax[1],
                                          rmax[2] + smax[2], alpha, pcen - qcen)
                            pref = c1 * c2 * 2 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))
                            for ia, l1 in enumerate(CART[la]):
                                for ib, l2 in enumerate(CART[lb]):
                                    for ic, l3 in enumerate(CART[lc]):
                                        for idd, l4 in enumerate(CART[ld]):
                                            acc = 0.0
                                            for tt in range(l1[0] + l2[0] + 1):
                                                e1x = eab[0][l1[0], l2[0], tt]
                                                if e1x == 0.0:
                                                    continue
                                                for uu in range(l1[1] + l2[1] + 1):
                                                    e1y = eab[1][l1[1], l2[1], uu]
                                                    if e1y == 0.0:
                                                        continue
                                                    for vv in range(l1[2] + l2[2] + 1):
                                                        e1 = e1x * e1y * eab[2][l1[2], l2[2], vv]
                                                        if e1 == 0.0:
                                                            continue
                                                        for t2 in range(l3[0] + l4[0] + 1):
                                                            e2x = ecd[0][l3[0], l4[0], t2]
                                                            if e2x == 0.0:
                                                                continue
                                                            for u2 in range(l3[1] + l4[1] + 1):
                                                                e2y = ecd[1][l3[1], l4[1], u2]
                                                                if e2y == 0.0:
                                                                    continue
                                                                for v2 in range(l3[2] + l4[2] + 1):
                                                                    e2 = e2x * e2y * ecd[2][l3[2], l4[2], v2]
                                                                    if e2 == 0.0:
                                                                        continue
                                                                    sign = -1.0 if (t2 + u2 + v2) % 2 else 1.0
                                                                    acc += e1 * e2 * sign * r[tt + t2, uu + u2, vv + v2]
                                            block[ia, ib, ic, idd] += pref * acc
                    for ia in range(na):
                        for ib in range(nb):
                            for ic in range(nc):
                                for idd in range(nd):
                                    val = block[ia, ib, ic, idd]
                                    mu, nu = offs[i] + ia, offs[j] + ib
                                    lam, sig = offs[k] + ic, offs[l] + idd
                                    for (a, b) in ((mu, nu), (nu, mu)):
                                        for (c, d) in ((lam, sig), (sig, lam)):
                                            g[a, b, c, d] = val
                                            g[c, d, a, b] = val
    return g


def nuclear_repulsion(atoms):
    e = 0.0
    for (s1, r1), (s2, r2) in itertools.combinations(
            [(s, np.asarray(r)) for s, r in atoms], 2):
        e += Z_OF[s1] * Z_OF[s2] / np.linalg.norm(r1 - r2)
    return e


def scf_rhf(S, Hcore, g, n_elec, e_nuc, max_iter=200, conv=1e-12):
    """Closed-shell RHF with DIIS. Returns (energy, C, eps, converged)."""
    n_occ = n_elec // 2
    sval, svec = np.linalg.eigh(S)
    X = svec @ np.diag(sval ** -0.5) @ svec.T
    F = Hcore.copy()
    D = None
    diis_f, diis_e = [], []
    energy = 0.0
    for it in range(max_iter):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :n_occ]
        D = Cocc @ Cocc.T
        J = np.einsum("pqrs,rs->pq", g, D, optimize=True)
        K = np.einsum("prqs,rs->pq", g, D, optimize=True)
        F_new = Hcore + 2 * J - K
        e_new = np.sum(D * (Hcore + F_new)) + e_nuc
        err = F_new @ D @ S - S @ D @ F_new
        diis_f.append(F_new)
        diis_e.append(err)
        if len(diis_f) > 8:
            diis_f.pop(0)
            diis_e.pop(0)
        if np.max(np.abs(err)) < conv and it > 1:
            return e_new, C, eps, True
        if len(diis_f) > 1:
            m = len(diis_f)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for a in range(m):
                for b in range(m):
                    B[a, b] = np.sum(diis_e[a] * diis_e[b])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(wi * fi for wi, fi in zip(w, diis_f))
            except np.linalg.LinAlgError:
                F = F_new
        else:
            F = F_new
        energy = e_new
    return energy, C, eps, False


def symmetry_canonicalize(S, F_ao, n_elec):
    """Rediagonalize the converged Fock matrix inside decoupled AO blocks.

    For symmetric geometries the AO basis splits into blocks that the Fock
    and overlap matrices never couple (e.g. sigma / pi_x / pi_y for a linear
    molecule on the z axis). Diagonalizing per block keeps degenerate MOs
    symmetry-pure instead of arbitrarily mixed, which makes the sparsity
    pattern of the MO integrals deterministic.
    """
    n = S.shape[0]
    coupled = (np.abs(F_ao) > 1e-9) | (np.abs(S) > 1e-9)
    # Union-find over AOs.
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(n):
        for b in range(a):
            if coupled[a, b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
    blocks = {}
    for a in range(n):
        blocks.setdefault(find(a), []).append(a)
    block_list = sorted(blocks.values(), key=lambda idx: idx[0])

    all_eps, all_vecs, all_block = [], [], []
    for bi, idx in enumerate(block_list):
        idx = np.asarray(idx)
        sval, svec = np.linalg.eigh(S[np.ix_(idx, idx)])
        Xb = svec @ np.diag(sval ** -0.5) @ svec.T
        Fb = Xb.T @ F_ao[np.ix_(idx, idx)] @ Xb
        eps_b, Cb = np.linalg.eigh(Fb)
        Cb = Xb @ Cb
        for m in range(len(idx)):
            vec = np.zeros(n)
            vec[idx] = Cb[:, m]
            all_eps.append(eps_b[m])
            all_vecs.append(vec)
            all_block.append(bi)
    order = np.lexsort((all_block, np.round(np.asarray(all_eps), 9)))
    C = np.column_stack([all_vecs[i] for i in order])
    eps = np.asarray([all_eps[i] for i in order])
    block_ids = [all_block[i] for i in order]
    return C, eps, block_ids


def run_molecule(atoms_ang, charge=0):
    """Full pipeline for one geometry. Coordinates in Angstrom."""
    atoms = [(s, np.asarray(r) * ANGSTROM_TO_BOHR) for s, r in atoms_ang]
    shells = build_shells(atoms)
    S, T, V = one_electron(shells, atoms)
    g = electron_repulsion(shells)
    e_nuc = nuclear_repulsion(atoms)
    n_elec = sum(Z_OF[s] for s, _ in atoms) - charge
    Hcore = T + V
    if n_elec == 1:
        # Single electron: the core Hamiltonian eigenbasis is exact.
        sval, svec = np.linalg.eigh(S)
        X = svec @ np.diag(sval ** -0.5) @ svec.T
        eps, Cp = np.linalg.eigh(X.T @ Hcore @ X)
        C = X @ Cp
        e_scf = eps[0] + e_nuc
        block_ids = [0] * len(eps)
    else:
        e_scf, C, eps, ok = scf_rhf(S, Hcore, g, n_elec, e_nuc)
        if not ok:
            raise RuntimeError("SCF did not converge")
        C, eps, block_ids = symmetry_canonicalize(S, Hcore + 2
                                                  * np.einsum("pqrs,rs->pq", g,
                                                              C[:, :n_elec // 2] @ C[:, :n_elec // 2].T,
                                                              optimize=True)
                                                  - np.einsum("prqs,rs->pq", g,
                                                              C[:, :n_elec // 2] @ C[:, :n_elec // 2].T,
                                                              optimize=True),
                                                  n_elec)
    h_mo = C.T @ Hcore @ C
    g_mo = np.einsum("pqrs,pi,qj,rk,sl->ijkl", g, C, C, C, C, optimize=True)
    return {
        "h": h_mo, "g": g_mo, "e_nuc": e_nuc, "e_scf": e_scf,
        "n_elec": n_elec, "eps": eps, "block_ids": block_ids,
    }


def write_fcidump(path, h, g, e_core, n_elec, ms2, orbsym=None, thresh=1e-12):
    n = h.shape[0]
    if orbsym is None:
        orbsym = [1] * n
    with open(path, "w") as f:
        f.write(f"&FCI NORB={n:4d},NELEC={n_elec:3d},MS2={ms2:2d},\n")
        f.write("  ORBSYM=" + ",".join(str(s + 1) for s in orbsym) + ",\n")
        f.write("  ISYM=1,\n")
        f.write(" &END\n")
        for p in range(n):
            for q in range(p + 1):
                for r in range(p + 1):
                    smax = q if r == p else r
                    for s in range(smax + 1):
                        v = g[p, q, r, s]
                        if abs(v) > thresh:
                            f.write(f"{v:23.16E} {p+1:3d} {q+1:3d} {r+1:3d} {s+1:3d}\n")
        for p in range(n):
            for q in range(p + 1):
                if abs(h[p, q]) > thresh:
                    f.write(f"{h[p,q]:23.16E} {p+1:3d} {q+1:3d}   0   0\n")
        f.write(f"{e_core:23.16E}   0   0   0   0\n")


# ---------------------------------------------------------------------------
# Independent determinant-CI oracle (used only to freeze reference energies).
# ---------------------------------------------------------------------------

def active_space(h, g, e_nuc, n_elec, n_homo, n_lumo):
    """Freeze doubly occupied core orbitals, return (h_eff, g_act, core_shift)."""
    n_occ = n_elec // 2
    act = list(range(n_occ - n_homo, n_occ + n_lumo))
    frozen = list(range(n_occ - n_homo))
    core = e_nuc
    for i in frozen:
        core += 2 * h[i, i]
        for j in frozen:
            core += 2 * g[i, i, j, j] - g[i, j, j, i]
    heff = np.zeros((len(act), len(act)))
    for a, p in enumerate(act):
        for b, q in enumerate(act):
            v = h[p, q]
            for i in frozen:
                v += 2 * g[p, q, i, i] - g[p, i, i, q]
            heff[a, b] = v
    gact = g[np.ix_(act, act, act, act)]
    return heff, gact, core


def ci_ground_energy(h, g, n_up, n_dn):
    """Smallest eigenvalue of the electronic Hamiltonian in the fixed
    (n_up, n_dn) determinant sector. Dense; for oracle-sized problems only."""
    n = h.shape[0]
    ups = list(itertools.combinations(range(n), n_up))
    dns = list(itertools.combinations(range(n), n_dn))
    dets = [(u, d) for u in ups for d in dns]
    index = {det: i for i, det in enumerate(dets)}
    dim = len(dets)
    H = np.zeros((dim, dim))

    def apply_excite(occ, p, q):
        """<new| a+_p a_q |occ> sign; returns (new_occ, sign) or None."""
        if q not in occ:
            return None
        rest = [o for o in occ if o != q]
        if p in rest:
            return None
        sign = (-1) ** occ.index(q)
        pos = 0
        while pos < len(rest) and rest[pos] < p:
            pos += 1
        sign *= (-1) ** pos
        new = tuple(rest[:pos] + [p] + rest[pos:])
        return new, sign

    for (u, d), col in index.items():
        # Diagonal
        diag = sum(h[p, p] for p in u) + sum(h[p, p] for p in d)
        for p in u:
            for q in u:
                diag += 0.5 * (g[p, p, q, q] - g[p, q, q, p])
            for q in d:
                diag += g[p, p, q, q]
        for p in d:
            for q in d:
                diag += 0.5 * (g[p, p, q, q] - g[p, q, q, p])
        H[col, col] += diag
        # Single excitations (plus their two-body dressing)
        for spin, occ, other in (("u", u, d), ("d", d, u)):
            for q in occ:
                for p in range(n):
                    if p == q:
                        continue
                    res = apply_excite(list(occ), p, q)
                    if res is None:
                        continue
                    new_occ, sign = res
                    val = h[p, q]
                    for i in occ:
                        if i == q:
                            continue
                        val += g[p, q, i, i] - g[p, i, i, q]
                    for i in other:
                        val += g[p, q, i, i]
                    det2 = (new_occ, d) if spin == "u" else (u, new_occ)
                    H[index[det2], col] += sign * val
        # Double excitations, same spin
        for spin, occ in (("u", u), ("d", d)):
            occ_l = list(occ)
            for qi in range(len(occ_l)):
                for qj in range(qi + 1, len(occ_l)):
                    q1, q2 = occ_l[qi], occ_l[qj]
                    virt = [p for p in range(n) if p not in occ_l]
                    for pi in range(len(virt)):
                        for pj in range(pi + 1, len(virt)):
                            p1, p2 = virt[pi], virt[pj]
                            r1 = apply_excite(occ_l, p1, q1)
                            if r1 is None:
                                continue
                            mid, s1 = r1
                            r2 = apply_excite(list(mid), p2, q2)
                            if r2 is None:
                                continue
                            new_occ, s2 = r2
                            val = g[p1, q1, p2, q2] - g[p1, q2, p2, q1]
                            det2 = (new_occ, d) if spin == "u" else (u, new_occ)
                            H[index[det2], col] += s1 * s2 * val
        # Opposite spin doubles
        for q1 in u:
            for p1 in range(n):
                if p1 == q1:
                    continue
                r1 = apply_excite(list(u), p1, q1)
                if r1 is None:
                    continue
                new_u, s1 = r1
                for q2 in d:
                    for p2 in range(n):
                        if p2 == q2:
                            continue
                        r2 = apply_excite(list(d), p2, q2)
                        if r2 is None:
                            continue
                        new_d, s2 = r2
                        val = g[p1, q1, p2, q2]
                        H[index[(new_u, new_d)], col] += s1 * s2 * val
    evals = np.linalg.eigvalsh(H)
    return float(evals[0])


def rhf_from_mo(h, g, e_core, n_elec):
    n_occ = n_elec // 2
    e = e_core
    for i in range(n_occ):
        e += 2 * h[i, i]
        for j in range(n_occ):
            e += 2 * g[i, i, j, j] - g[i, j, j, i]
    return e


# ---------------------------------------------------------------------------
# Fixture geometries
# ---------------------------------------------------------------------------

def h2_geometry(d):
    return [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, d))]


def co2_mg_geometry(d_mg_o, theta_deg=120.0, r_co=1.16):
    """O=C=O with Mg2+ coordinated to one oxygen inside the xz plane.

    d_mg_o: Mg-O distance in Angstrom. theta_deg: C-O-Mg angle (180 = linear
    end-on approach). The default 120 degrees is the bent coordination used
    by the committed fixtures; it keeps the complex planar (two AO symmetry
    blocks), which fixes the sparsity pattern of the MO integrals.
    """
    th = math.radians(theta_deg)
    o1 = (0.0, 0.0, 0.0)
    c = (0.0, 0.0, -r_co)
    o2 = (0.0, 0.0, -2 * r_co)
    mg = (d_mg_o * math.sin(math.pi - th), 0.0, d_mg_o * math.cos(math.pi - th))
    return [("O", o1), ("C", c), ("O", o2), ("Mg", mg)]


def h3_plus_geometry(r, theta_deg):
    """H3+ bent triatomic: two H-H bonds of length r with opening angle theta."""
    th = math.radians(theta_deg)
    return [("H", (0.0, 0.0, 0.0)),
            ("H", (0.0, 0.0, r)),
            ("H", (r * math.sin(th), 0.0, r * math.cos(th)))]


def nnz_counts(h, g, thresh=1e-10):
    """Spin-orbital generator-term count: 2*nnz(h) + 4*nnz(g)."""
    return 2 * int(np.sum(np.abs(h) > thresh)) + 4 * int(np.sum(np.abs(g) > thresh))


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    values = {}

    def rel(name):
        return os.path.join(here, name)

    # ---- H2 scan ----------------------------------------------------------
    h2_lengths = [0.5, 0.6, 0.735, 0.9, 1.0, 1.2, 1.5, 2.5, 10.0]
    h2_entries = []
    for d in h2_lengths:
        res = run_molecule(h2_geometry(d))
        name = f"h2_{d:.3f}.fcidump"
        write_fcidump(rel(name), res["h"], res["g"], res["e_nuc"], res["n_elec"], 0,
                      orbsym=res["block_ids"])
        fci = ci_ground_energy(res["h"], res["g"], 1, 1) + res["e_nuc"]
        values[name] = {
            "e_scf": res["e_scf"], "e_nuc": res["e_nuc"], "e_fci": fci,
            "n_elec": res["n_elec"], "n_orb": res["h"].shape[0],
        }
        h2_entries.append((d, name))
        print(f"{name}: E_RHF={res['e_scf']:.10f}  E_FCI={fci:.10f}  Enuc={res['e_nuc']:.8f}")
    with open(rel("h2_scan.manifest"), "w") as f:
        f.write("# H2 bond-length scan (coord in Angstrom)\n")
        for d, name in h2_entries:
            f.write(f"coord={d} path={name}\n")

    # ---- H atom (dissociation fragments) ----------------------------------
    res = run_molecule([("H", (0.0, 0.0, 0.0))])
    write_fcidump(rel("h_atom.fcidump"), res["h"], res["g"], res["e_nuc"], 1, 1)
    values["h_atom.fcidump"] = {
        "e_scf": res["e_scf"], "e_nuc": 0.0,
        "e_fci": float(res["h"][0, 0]), "n_elec": 1, "n_orb": 1,
    }
    print(f"h_atom: E={res['h'][0,0]:.10f}")

    # ---- H4 chain (LEC supersystem toy) ------------------------------------
    h4 = [("H", (0.0, 0.0, i * 1.0)) for i in range(4)]
    res = run_molecule(h4)
    write_fcidump(rel("h4_chain.fcidump"), res["h"], res["g"], res["e_nuc"],
                  res["n_elec"], 0, orbsym=res["block_ids"])
    values["h4_chain.fcidump"] = {
        "e_scf": res["e_scf"], "e_nuc": res["e_nuc"],
        "n_elec": res["n_elec"], "n_orb": res["h"].shape[0],
    }
    print(f"h4_chain: E_RHF={res['e_scf']:.10f}")

    # ---- H3+ 2D grid (distance x angle toy for grid scans) -----------------
    grid_entries = []
    for r in (0.80, 0.90, 1.00):
        for th in (60.0, 75.0, 90.0):
            res = run_molecule(h3_plus_geometry(r, th), charge=1)
            name = f"h3p_{r:.2f}_{th:.0f}.fcidump"
            write_fcidump(rel(name), res["h"], res["g"], res["e_nuc"],
                          res["n_elec"], 0)
            values[name] = {"e_scf": res["e_scf"], "e_nuc": res["e_nuc"],
                            "n_elec": res["n_elec"], "n_orb": res["h"].shape[0]}
            grid_entries.append((r, th, name))
    with open(rel("h3p_grid.manifest"), "w") as f:
        f.write("# H3+ grid: coord = bond length (Angstrom), coord2 = angle (deg)\n")
        for r, th, name in grid_entries:
            f.write(f"coord={r} coord2={th} path={name}\n")
    print("h3+ grid done")

    # ---- CO2 - Mg2+ --------------------------------------------------------
    distances = [1.8, 1.9, 2.0, 2.1, 2.2, 2.4, 2.6, 2.8]
    co2mg_entries = []
    for d in distances:
        res = run_molecule(co2_mg_geometry(d), charge=2)
        name = f"co2mg_{d:.3f}.fcidump"
        write_fcidump(rel(name), res["h"], res["g"], res["e_nuc"], res["n_elec"], 0,
                      orbsym=res["block_ids"])
        entry = {
            "e_scf": res["e_scf"], "e_nuc": res["e_nuc"],
            "n_elec": res["n_elec"], "n_orb": res["h"].shape[0],
            "term_count_full": nnz_counts(res["h"], res["g"]),
            "term_count_full_1e-8": nnz_counts(res["h"], res["g"], 1e-8),
        }
        # Frozen CASCI references for small active windows.
        for nh, nl in ((1, 1), (2, 2), (3, 3)):
            heff, gact, core = active_space(res["h"], res["g"], res["e_nuc"],
                                            res["n_elec"], nh, nl)
            e = ci_ground_energy(heff, gact, nh, nh) + core
            entry[f"e_casci_{nh}h{nl}l"] = e
            entry[f"term_count_{nh}h{nl}l"] = nnz_counts(heff, gact)
        values[name] = entry
        co2mg_entries.append((d, name))
        print(f"{name}: E_RHF={res['e_scf']:.10f} counts: full={entry['term_count_full']} "
              f"1h1l={entry['term_count_1h1l']} 2h2l={entry['term_count_2h2l']} "
              f"3h3l={entry['term_count_3h3l']}")
    with open(rel("co2mg_scan.manifest"), "w") as f:
        f.write("# CO2-Mg2+ scan over the Mg-O distance (Angstrom)\n")
        for d, name in co2mg_entries:
            f.write(f"coord={d} path={name}\n")
    best = min(co2mg_entries, key=lambda e: values[e[1]]["e_scf"])
    values["co2mg_optimal"] = {"distance": best[0], "file": best[1]}
    print(f"optimal co2mg distance: {best[0]}")

    with open(rel("fixture_values.json"), "w") as f:
        json.dump(values, f, indent=1, sort_keys=True)
    print("wrote fixture_values.json")


if __name__ == "__main__":
    main()
