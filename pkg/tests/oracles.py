"""Brute-force oracles shared by the unit and acceptance tests.

None of these use the package's own formulas: lattices and cosets are
enumerated directly, and q-expansions come from classical product identities.
"""

import itertools
from fractions import Fraction


def lattice_cells(p, c):
    """Cosets g K in K diag(p^-c, p^c) K for SL_2(Q_p), as lattices g Z_p^2.

    Such a lattice L satisfies p^c Z^2 <= L <= p^-c Z^2 with L / p^c Z^2 cyclic of
    order p^2c; scaling by p^c, these are cyclic subgroups of (Z/p^2c)^2 of
    order p^2c. Each is returned with a generator.
    """
    N = p ** (2 * c)
    seen = {}
    for v in itertools.product(range(N), repeat=2):
        if v[0] % p == 0 and v[1] % p == 0:
            continue
        group = frozenset(((t * v[0]) % N, (t * v[1]) % N) for t in range(N))
        seen.setdefault(group, v)
    return list(seen.values())


def iwasawa_exponent(p, c, v):
    """j with g = n * diag(p^j, p^-j) * k for the lattice spanned by p^c Z^2 and v / p^c."""
    # the second coordinates of L span p^(v_p(v_2) - c) Z_p (or p^c Z_p when v_2 = 0)
    N = p ** (2 * c)
    y = v[1] % N
    val = 2 * c if y == 0 else next(e for e in range(2 * c) if y % p ** (e + 1))
    return -(val - c)


def hecke_oracle(u, p):
    """phi(a_1) for SL_2 by summing the spherical vector over the q^2+q cosets of K a_1 K."""
    total = 0
    cells = lattice_cells(p, 1)
    for v in cells:
        j = iwasawa_exponent(p, 1, v)
        # spherical vector: unramified character times delta^(1/2)
        total = total + u ** (-j) * Fraction(p) ** (-j)
    return total / len(cells)


def lagrangian_subgroups(p):
    """Subgroups of (Z/p^2)^4 of order p^4 isotropic for the standard symplectic form.

    For Sp_4(Q_p) these are the lattices p g Z_p^4 with g in a cell K a_lam K,
    lam_1 <= 1; the number of elements killed by p tells the cell.
    """
    N = p * p
    vecs = list(itertools.product(range(N), repeat=4))
    form = lambda x, y: (x[0] * y[2] + x[1] * y[3] - x[2] * y[0] - x[3] * y[1]) % N

    def closure(gens):
        group = {(0, 0, 0, 0)}
        while True:
            bigger = {tuple((a + b) % N for a, b in zip(x, g)) for x in group for g in gens} | group
            if bigger == group:
                return frozenset(group)
            group = bigger

    level, done = {frozenset([(0, 0, 0, 0)])}, set()
    while level:
        nxt = set()
        for H in level:
            if len(H) == p**4:
                done.add(H)
                continue
            for v in vecs:
                if v not in H and not any(form(v, h) for h in H):
                    nxt.add(closure(list(H) + [v]))
        level = nxt
    return done


def jacobi_delta(n):
    """q-expansion of Delta = q * (prod (1 - q^m)^3)^8, using Jacobi's identity for the cube."""
    cube = [0] * n
    m = 0
    while m * (m + 1) // 2 < n:
        cube[m * (m + 1) // 2] += (-1) ** m * (2 * m + 1)
        m += 1
    out = [1] + [0] * (n - 1)
    for _ in range(8):
        out = [sum(out[i] * cube[j - i] for i in range(j + 1)) for j in range(n)]
    return [0] + out[: n - 1]
