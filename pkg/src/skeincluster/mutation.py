"""Seed mutation: matrix mutation, quantum exchange, and the two-step
decomposition into a monomial transform and a dilogarithm twist.

Exchange matrices are half-integer and stored doubled; commutation
matrices Pi are integer.  Cluster variables are tracked as honest Laurent
elements of the fixed initial torus, so the two-term exchange value is
computed as a Weyl-ordered numerator followed by an exact right division
by the outgoing variable (the quantum Laurent phenomenon makes the
division exact; failure raises).
"""

from __future__ import annotations

import numpy as np

from .omega import OmegaScalar, ONE
from .torus import (
    ExponentLinearMap,
    NotDivisible,
    SkewForm,
    TorusElement,
    commutation_omega_exponent,
    exact_right_divide,
    weyl_bracket,
)


def matrix_mutate(mat, k, doubled=True):
    """Mutate a square integer matrix at index k.

    With doubled=True the matrix holds doubled entries (2*Q); entries in
    the k-th row/column must then be even for the correction term to stay
    integral (true whenever k is a mutable vertex).
    """
    m = np.asarray(mat, dtype=np.int64)
    out = m.copy()
    size = m.shape[0]
    div = 4 if doubled else 2
    for u in range(size):
        muk = m[u][k]
        if u == k or muk == 0:
            continue
        for v in range(size):
            if v == k:
                continue
            t = muk * abs(m[k][v]) + abs(muk) * m[k][v]
            if t:
                if t % div:
                    raise ValueError("mutation correction is not integral")
                out[u][v] += t // div
    out[k, :] = -m[k, :]
    out[:, k] = -m[:, k]
    return out


def ef_matrices(q2, k, sign):
    """The involutive transition matrices (E, F) at k with a sign choice.

    E differs from the identity in column k, F = E^T in row k; both square
    to the identity and conjugate the mutated matrices into the unmutated
    ones.
    """
    size = q2.shape[0]
    e = np.eye(size, dtype=np.int64)
    e[k][k] = -1
    for i in range(size):
        if i != k:
            val = -sign * q2[i][k]
            if val % 2:
                raise ValueError("E entry is not integral")
            e[i][k] = max(val // 2, 0)
    return e, e.T.copy()


def pi_mutate(pi, q2, k):
    """Mutated commutation matrix, from the unmutated (Pi, Q) at k."""
    size = pi.shape[0]
    out = pi.copy()
    if (q2[:, k] % 2).any():
        raise ValueError("half-integer exchange entries at a mutable vertex")
    col = np.maximum(q2[:, k] // 2, 0)
    corr = col @ pi
    for j in range(size):
        if j == k:
            continue
        out[k][j] = -pi[k][j] + corr[j]
        out[j][k] = -out[k][j]
    out[k][k] = 0
    return out


class FrozenVertex(ValueError):
    pass


class QuantumSeed:
    """A quantum seed with variables realized in the initial torus.

    q2      doubled exchange matrix (rows/cols follow form.vertices)
    pi      integer commutation matrix
    frozen  set of vertex indices never mutated
    vars    list of TorusElement cluster variables, one per vertex
    form    the ambient torus, with doubled skew entries n * pi_initial
    """

    def __init__(self, n, form, q2, pi, frozen, variables, history=()):
        self.n = n
        self.form = form
        self.q2 = np.asarray(q2, dtype=np.int64)
        self.pi = np.asarray(pi, dtype=np.int64)
        self.frozen = frozenset(frozen)
        self.vars = list(variables)
        self.history = tuple(history)

    @staticmethod
    def initial(bundle):
        """The seed (Q, Pi, M) of a surface bundle; variables are the
        generators of the A-torus."""
        form = bundle.a_form
        variables = [TorusElement.generator(form, v) for v in bundle.ids]
        frozen = {bundle.id_index[v] for v in bundle.boundary_vertices}
        return QuantumSeed(bundle.n, form, bundle.Q2, bundle.Pi, frozen, variables)

    @property
    def rank(self):
        return len(self.vars)

    def mutable(self):
        return [i for i in range(self.rank) if i not in self.frozen]

    def copy(self):
        return QuantumSeed(
            self.n, self.form, self.q2, self.pi, self.frozen, self.vars, self.history
        )

    # -- the toric frame ----------------------------------------------------

    def frame(self, t):
        """M(t) for a nonnegative integer vector t: the Weyl-ordered
        product of the current variables with exponents t."""
        total = 0
        entries = [(i, ti) for i, ti in enumerate(t) if ti]
        for a in range(len(entries)):
            ia, ta = entries[a]
            for b in range(a + 1, len(entries)):
                ib, tb = entries[b]
                total += ta * tb * self.pi[ia][ib]
        prod = TorusElement.one(self.form)
        for i, ti in entries:
            if ti < 0:
                raise ValueError("frame is only expanded for t >= 0")
            for _ in range(ti):
                prod = prod * self.vars[i]
        # xi^(-total/2) = w^(-n * total / 2)
        return prod.shift(-self.n * total)

    def exchange_vectors(self, k):
        pos = np.maximum(self.q2[:, k] // 2, 0)
        neg = np.maximum(-self.q2[:, k] // 2, 0)
        return pos, neg

    def exchange_value(self, k):
        """The two-term exchange element mu_k(A_k), as a Laurent element."""
        pos, neg = self.exchange_vectors(k)
        parts = []
        for m in (pos, neg):
            shift = int(m @ self.pi[:, k])
            # M(m - e_k) = xi^(m Pi e_k / 2) M(m) A_k^(-1)
            parts.append(self.frame(m).shift(self.n * shift))
        numerator = parts[0] + parts[1]
        return exact_right_divide(numerator, self.vars[k])

    def mutate(self, k):
        if k in self.frozen:
            raise FrozenVertex("vertex %d is frozen" % k)
        new_var = self.exchange_value(k)
        variables = list(self.vars)
        variables[k] = new_var
        return QuantumSeed(
            self.n,
            self.form,
            matrix_mutate(self.q2, k),
            pi_mutate(self.pi, self.q2, k),
            self.frozen,
            variables,
            self.history + (k,),
        )

    def mutate_sequence(self, indices):
        seed = self
        for k in indices:
            seed = seed.mutate(k)
        return seed

    def check_quasi_commutation(self):
        """Verify A_i A_j = xi^(Pi(i,j)) A_j A_i for all pairs."""
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                r = commutation_omega_exponent(self.vars[i], self.vars[j])
                if r is None or r != self.n * self.pi[i][j]:
                    return False, (i, j)
        return True, None

    def __eq__(self, other):
        return (
            isinstance(other, QuantumSeed)
            and (self.q2 == other.q2).all()
            and (self.pi == other.pi).all()
            and self.vars == other.vars
        )


# -- the two-step decomposition ---------------------------------------------


def seed_torus_form(n, pi, vertices=None, label=""):
    """The abstract based torus of a seed: generators quasi-commute by
    xi^Pi, so the doubled skew entries are n * Pi."""
    if vertices is None:
        vertices = list(range(pi.shape[0]))
    return SkewForm(vertices, n * np.asarray(pi, dtype=np.int64), name=label)


def mu_prime_matrix(q2, k):
    """Exponent matrix of the monomial transform: e_k -> -e_k + [Q(.,k)]_+."""
    size = q2.shape[0]
    mat = np.eye(size, dtype=np.int64)
    mat[k][k] = -1
    for j in range(size):
        if j != k:
            mat[k][j] = max(q2[j][k] // 2, 0)
    return mat


def mu_prime_map(frame_form_new, frame_form_old, q2_old, k):
    """The monomial isomorphism from the mutated based torus to the
    unmutated one (first mutation step)."""
    return ExponentLinearMap(
        frame_form_new, frame_form_old, mu_prime_matrix(q2_old, k)
    )


def nu_prime_matrix(q2_old, k):
    """Exponent matrix of the X-side monomial transform.

    Sends the mutated generator Z'_k to Z_k^(-1) and Z'_v to the Weyl
    product [Z_v Z_k^([Q(v,k)]_+)]; rows act on exponent vectors."""
    size = q2_old.shape[0]
    mat = np.eye(size, dtype=np.int64)
    mat[k][k] = -1
    for v in range(size):
        if v != k:
            mat[v][k] = max(q2_old[v][k] // 2, 0)
    return mat


def nu_prime_map(z_form_new, z_form_old, k):
    return ExponentLinearMap(
        z_form_new, z_form_old, nu_prime_matrix(z_form_old.doubled, k)
    )


# -- dilogarithm binomials ----------------------------------------------------


class BinomialFraction:
    """numerator * prod_r (1 + w^(d_r) Z^base)^(-1), factors sharing one base.

    The binomial factors commute with each other, so the denominator list
    is unordered in effect; moving a factor past a monomial shifts d by
    the commutation pairing.  Equality is decided by clearing
    denominators.
    """

    def __init__(self, numerator, base=None, shifts=()):
        self.numerator = numerator
        self.base = None if not shifts else tuple(base)
        self.shifts = tuple(shifts)

    @property
    def form(self):
        return self.numerator.form

    def is_polynomial(self):
        return not self.shifts

    def denominator(self):
        d = TorusElement.one(self.form)
        for s in self.shifts:
            d = d * binomial(self.form, self.base, s)
        return d

    def to_element(self):
        if self.shifts:
            raise NotDivisible("fraction has a nontrivial denominator")
        return self.numerator

    def mul_monomial_right(self, mono):
        """Multiply by a monomial on the right: N D^-1 m = N m D'^-1 with
        every binomial shift corrected by the commutation exponent of the
        base against m (doubled: 2 * pairing)."""
        k, _ = mono.single_term()
        corr = 2 * self.form.pairing_doubled(self.base, k) if self.shifts else 0
        return BinomialFraction(
            self.numerator * mono,
            self.base,
            tuple(s + corr for s in self.shifts),
        )

    def mul_fraction(self, other):
        """Product with another fraction sharing the same base."""
        if self.shifts and other.shifts and self.base != other.base:
            raise ValueError("denominator bases differ")
        base = self.base if self.shifts else other.base
        if not other.numerator.is_monomial():
            # move our denominator past a general numerator only when empty
            if self.shifts:
                raise ValueError("cannot commute denominator past a sum")
            return BinomialFraction(
                self.numerator * other.numerator, base, other.shifts
            )
        k, _ = other.numerator.single_term()
        corr = 2 * self.form.pairing_doubled(self.base, k) if self.shifts else 0
        return BinomialFraction(
            self.numerator * other.numerator,
            base,
            tuple(s + corr for s in self.shifts) + tuple(other.shifts),
        )

    def equals(self, other):
        """Exact equality after clearing both denominator chains."""
        if self.shifts and other.shifts and self.base != other.base:
            return False
        return self.numerator * other.denominator() == other.numerator * self.denominator()

    def __repr__(self):
        return "BinomialFraction(%r, base=%r, shifts=%r)" % (
            self.numerator,
            self.base,
            self.shifts,
        )


def binomial(form, base, doubled_shift):
    """1 + w^(doubled_shift/2) Z^base."""
    one = TorusElement.one(form)
    return one + TorusElement.monomial(
        form, base, OmegaScalar.unit(doubled_shift)
    )


def fq_shifts(n, m):
    """Doubled w-exponents of the factors of F^q(x, m).

    F^q(x,m) = prod_{r=1..|m|} (1 + q^((2r-1) sgn m) x)^(sgn m); each
    factor's scalar q^t contributes the doubled exponent 2 n^2 t.
    """
    sgn = 1 if m > 0 else -1
    return [2 * n * n * (2 * r - 1) * sgn for r in range(1, abs(m) + 1)]


def fq_element(form, base, m, n):
    """F^q(Z^base, m) for m >= 0, expanded as a torus element."""
    if m < 0:
        raise ValueError("use a BinomialFraction for negative m")
    out = TorusElement.one(form)
    for d in fq_shifts(n, m):
        out = out * binomial(form, base, d)
    return out


def fq_fraction(form, numerator, base, m, n):
    """numerator * F^q(Z^base, m) as a fraction (polynomial when m >= 0)."""
    if m >= 0:
        poly = numerator
        for d in fq_shifts(n, m):
            poly = poly * binomial(form, base, d)
        return BinomialFraction(poly)
    return BinomialFraction(numerator, base, tuple(fq_shifts(n, m)))


def nu_sharp_on_balanced(z_form, q2, k, t, n):
    """Image of the balanced monomial Z^t under the dilogarithm twist:
    Z^t F^q(X_k, m) with X_k = Z_k^n and m = (1/n) sum_v Q(k,v) t_v."""
    num = 2 * int(q2[k] @ np.asarray(t, dtype=np.int64))
    if num % (4 * n):
        raise ValueError("monomial is not mutable-balanced at k")
    m = num // (4 * n)
    base = tuple(n if i == k else 0 for i in range(z_form.rank))
    return fq_fraction(z_form, TorusElement.monomial(z_form, tuple(t)), base, m, n), m


def mu_sharp_on_monomial(a_form, q2, pi, k, t, n):
    """Image of the frame monomial A^t under the second mutation step.

    Computed directly from the generator images: decompose
    A^t = xi^(j/2) A^t' A_k^(t_k), substitute
    A_k -> A_k (1 + q^-1 A^(Q(k,*)))^(-1), and push the binomials to the
    right.  Returns a BinomialFraction (polynomial numerator when
    t_k <= 0).
    """
    t = tuple(int(x) for x in t)
    tk = t[k]
    t_rest = tuple(0 if i == k else x for i, x in enumerate(t))
    base = tuple(int(x) // 2 for x in q2[k])  # exponent vector Q(k,*)
    j = -tk * int(np.asarray(t_rest, dtype=np.int64) @ pi[:, k])
    rest = TorusElement.monomial(a_form, t_rest).shift(n * j)
    a_k = TorusElement.generator(a_form, a_form.vertices[k])
    qm1 = -2 * n * n  # doubled exponent of q^-1
    if tk >= 0:
        # (A_k (1+q^-1 B)^(-1))^tk: binomials slide right past A_k gaining q^-2
        frac = BinomialFraction(rest)
        for _ in range(tk):
            frac = frac.mul_fraction(
                BinomialFraction(a_k, base, (qm1,))
            )
    else:
        poly = rest
        for _ in range(-tk):
            # (A_k (1+q^-1 B)^(-1))^(-1) = (1 + q^-1 B) A_k^(-1)
            poly = poly * binomial(a_form, base, qm1)
            poly = poly * a_k.inverse_monomial()
        frac = BinomialFraction(poly)
    return frac


def mu_sharp_closed_form(a_form, q2, pi, k, t, n):
    """The closed form A^t F^q(A^(Q(k,*)), m) with m = -t_k."""
    t = tuple(int(x) for x in t)
    m = -t[k]
    base = tuple(int(x) // 2 for x in q2[k])
    return fq_fraction(a_form, TorusElement.monomial(a_form, t), base, m, n)


# -- balanced lattices ---------------------------------------------------------


def balanced_basis(k_matrix):
    """Rows of K generate the balanced exponent group {t : tH in nZ^V}."""
    return [tuple(int(x) for x in row) for row in np.asarray(k_matrix)]
