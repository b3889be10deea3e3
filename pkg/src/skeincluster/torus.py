"""Quantum tori: noncommutative Laurent polynomials over a skew form.

A torus is determined by an antisymmetric half-integer form Q on a finite
vertex set; its elements are integer combinations of Weyl-ordered monomials
Z^k with the product rule

    Z^a * Z^b = w^(a Q b^T) * Z^(a+b),

so that Z^a Z^b = w^(2 a Q b^T) Z^b Z^a.  Forms store doubled entries
(2*Q) so all arithmetic stays in integers; the w-exponent of a product is
then a * doubled * b^T, itself a doubled w-exponent.
"""

from __future__ import annotations

import json

import numpy as np

from .omega import ONE, OmegaScalar


class FormMismatch(ValueError):
    pass


class NotDivisible(ValueError):
    pass


class NotQuasiCommuting(ValueError):
    pass


class SkewForm:
    """An antisymmetric half-integer form on an ordered vertex set.

    ``doubled[i][j]`` holds 2*Q(v_i, v_j).  Vertex ids are arbitrary
    hashable labels; their order fixes the exponent-tuple layout and the
    lexicographic monomial order.
    """

    def __init__(self, vertices, doubled, name=""):
        self.vertices = list(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        m = np.array(doubled, dtype=np.int64)
        if m.shape != (len(self.vertices),) * 2:
            raise ValueError("form shape does not match vertex set")
        if (m != -m.T).any():
            raise ValueError("form is not antisymmetric")
        self.doubled = m
        self.name = name

    @property
    def rank(self):
        return len(self.vertices)

    def zero_exponent(self):
        return (0,) * self.rank

    def basis_exponent(self, v, power=1):
        e = [0] * self.rank
        e[self.index[v]] = power
        return tuple(e)

    def exponent(self, entries):
        """Build an exponent tuple from a {vertex: int} mapping."""
        e = [0] * self.rank
        for v, c in entries.items():
            e[self.index[v]] = c
        return tuple(e)

    def pairing_doubled(self, a, b):
        """2 * (a Q b^T); equals the doubled w-exponent of Z^a Z^b / Z^(a+b)... doubled once more.

        Concretely Z^a * Z^b = w^(d/2) Z^(a+b) with d = a.doubled.b^T.
        """
        return int(np.asarray(a, dtype=np.int64) @ self.doubled @ np.asarray(b, dtype=np.int64))

    def __eq__(self, other):
        return (
            isinstance(other, SkewForm)
            and self.vertices == other.vertices
            and (self.doubled == other.doubled).all()
        )

    def __repr__(self):
        return "SkewForm(%s, rank=%d)" % (self.name or "?", self.rank)


class TorusElement:
    """A Laurent element sum c_k Z^k of a quantum torus, in the Weyl basis.

    ``terms`` maps exponent tuples to nonzero OmegaScalar coefficients.
    Elements are value-like: never mutate ``terms`` after construction.
    """

    __slots__ = ("form", "terms")

    def __init__(self, form, terms=None):
        self.form = form
        t = {}
        if terms:
            for k, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    nc = t.get(k)
                    nc = c if nc is None else nc + c
                    if nc:
                        t[k] = nc
                    else:
                        del t[k]
        self.terms = t

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(form):
        return TorusElement(form)

    @staticmethod
    def monomial(form, exponent, coeff=ONE):
        """The Weyl monomial coeff * Z^exponent."""
        exponent = tuple(int(x) for x in exponent)
        if len(exponent) != form.rank:
            raise ValueError("exponent length mismatch")
        return TorusElement(form, {exponent: coeff} if coeff else {})

    @staticmethod
    def one(form):
        return TorusElement.monomial(form, form.zero_exponent())

    @staticmethod
    def generator(form, v, power=1):
        return TorusElement.monomial(form, form.basis_exponent(v, power))

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def single_term(self):
        if len(self.terms) != 1:
            raise ValueError("not a monomial")
        return next(iter(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        if self.form is not other.form and self.form != other.form:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- additive structure ---------------------------------------------

    def _check(self, other):
        if self.form is not other.form and self.form != other.form:
            raise FormMismatch("elements live on different tori")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            nc = t.get(k)
            nc = c if nc is None else nc + c
            if nc:
                t[k] = nc
            else:
                del t[k]
        out = TorusElement(self.form)
        out.terms = t
        return out

    def __neg__(self):
        out = TorusElement(self.form)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        if not scalar:
            return TorusElement(self.form)
        out = TorusElement(self.form)
        out.terms = {k: c * scalar for k, c in self.terms.items()}
        return out

    def shift(self, doubled_exp):
        """Multiply by the central scalar w^(doubled_exp / 2)."""
        if not doubled_exp:
            return self
        out = TorusElement(self.form)
        out.terms = {k: c.shift(doubled_exp) for k, c in self.terms.items()}
        return out

    # -- multiplicative structure ----------------------------------------

    def __mul__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return TorusElement(self.form)
        akeys = list(self.terms)
        bkeys = list(other.terms)
        amat = np.array(akeys, dtype=np.int64)
        bmat = np.array(bkeys, dtype=np.int64)
        shifts = amat @ self.form.doubled @ bmat.T
        t = {}
        for i, a in enumerate(akeys):
            ca = self.terms[a]
            row = shifts[i]
            for j, b in enumerate(bkeys):
                k = tuple(x + y for x, y in zip(a, b))
                c = (ca * other.terms[b]).shift(int(row[j]))
                nc = t.get(k)
                nc = c if nc is None else nc + c
                if nc:
                    t[k] = nc
                else:
                    del t[k]
        out = TorusElement(self.form)
        out.terms = t
        return out

    def __pow__(self, m):
        if m < 0:
            return self.inverse_monomial() ** (-m)
        out = TorusElement.one(self.form)
        for _ in range(m):
            out = out * self
        return out

    def inverse_monomial(self):
        """Inverse, defined for unit monomials only."""
        k, c = self.single_term()
        return TorusElement.monomial(self.form, tuple(-x for x in k), c.inverse())

    # -- degrees, division ------------------------------------------------

    def leading_exponent(self):
        """Lexicographically maximal exponent (vertex order of the form)."""
        if not self.terms:
            raise ValueError("zero element has no degree")
        return max(self.terms)

    def trailing_exponent(self):
        if not self.terms:
            raise ValueError("zero element has no degree")
        return min(self.terms)

    def reflect(self):
        """Coefficient-wise w^(1/2) -> w^(-1/2); monomials Z^k are fixed."""
        out = TorusElement(self.form)
        out.terms = {k: c.reflect() for k, c in self.terms.items()}
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms, reverse=True)[:6]:
            bits.append("(%s)*Z^%s" % (self.terms[k], list(k)))
        if len(self.terms) > 6:
            bits.append("... (%d terms)" % len(self.terms))
        return " + ".join(bits)


def commutation_omega_exponent(x, y):
    """The integer r with x*y = w^r * y*x, or None if there is no such r.

    For monomials Z^a, Z^b this is a.doubled.b^T = 2 a Q b^T.  For general
    elements a candidate is read off from leading terms and then both
    products are compared exactly.
    """
    if x.is_zero() or y.is_zero():
        return 0
    x._check(y)
    a = x.leading_exponent()
    b = y.leading_exponent()
    r = x.form.pairing_doubled(a, b)
    # shift() takes doubled exponents, so multiplying by w^r is shift(2r)
    if x * y == (y * x).shift(2 * r):
        return r
    return None


def weyl_bracket(factors):
    """Order-independent normalized product [x1 ... xr].

    Every pair of factors must quasi-commute; the result is
    w^(-sum_{i<j} lambda_ij / 2) x1...xr where x_i x_j = w^(lambda_ij) x_j x_i.
    """
    factors = list(factors)
    if not factors:
        raise ValueError("empty bracket")
    total = 0
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            r = commutation_omega_exponent(factors[i], factors[j])
            if r is None:
                raise NotQuasiCommuting(
                    "bracket factors %d and %d do not quasi-commute" % (i, j)
                )
            total += r
    prod = factors[0]
    for f in factors[1:]:
        prod = prod * f
    # the pair (i, j) contributes w^(-r_ij / 2), i.e. a doubled shift -r_ij
    return prod.shift(-total)


def exact_right_divide(numerator, divisor):
    """The unique P with P * divisor == numerator, or raise NotDivisible.

    Greedy leading-term elimination in the lexicographic order; monomial
    leading terms are invertible up to scalar division, so each step
    cancels the current leading term of the remainder exactly.
    """
    numerator._check(divisor)
    if divisor.is_zero():
        raise ZeroDivisionError("division by zero element")
    form = numerator.form
    quot = {}
    rem = TorusElement(form)
    rem.terms = dict(numerator.terms)
    b = divisor.leading_exponent()
    cb = divisor.terms[b]
    if numerator.is_zero():
        return TorusElement(form)
    low = tuple(
        x - y
        for x, y in zip(numerator.trailing_exponent(), divisor.trailing_exponent())
    )
    while rem.terms:
        a = rem.leading_exponent()
        t = tuple(x - y for x, y in zip(a, b))
        if t < low:
            raise NotDivisible("no exact right quotient")
        # (c Z^t)(cb Z^b) = c cb w^(tQb) Z^a  =>  c = ca / cb * w^(-tQb)
        ca = rem.terms[a]
        c = ca.shift(-form.pairing_doubled(t, b)).exact_div(cb)
        if c is None:
            raise NotDivisible("leading coefficient not divisible")
        quot[t] = c
        piece = TorusElement.monomial(form, t, c)
        rem = rem - piece * divisor
    return TorusElement(form, quot)


def is_balanced(exponent, h_matrix, n):
    """True iff every entry of exponent . H is divisible by n."""
    v = np.asarray(exponent, dtype=np.int64) @ np.asarray(h_matrix, dtype=np.int64)
    return not (v % n).any()


class ExponentLinearMap:
    """The monomial algebra map Z^k -> W^(k L / denom) between two tori.

    The matrix condition denom^2 * Q_src = L Q_tgt L^T is checked once at
    construction; it makes the assignment multiplicative on all Weyl
    monomials it is defined on.  Individual images must have integral
    exponents (checked per call).
    """

    def __init__(self, source, target, matrix, denom=1):
        self.source = source
        self.target = target
        self.matrix = np.array(matrix, dtype=np.int64)
        self.denom = int(denom)
        if self.matrix.shape != (source.rank, target.rank):
            raise ValueError("map matrix has wrong shape")
        lhs = source.doubled * self.denom * self.denom
        rhs = self.matrix @ target.doubled @ self.matrix.T
        if (lhs != rhs).any():
            raise FormMismatch("matrix does not intertwine the two forms")

    def apply_exponent(self, k):
        img = np.asarray(k, dtype=np.int64) @ self.matrix
        if self.denom != 1:
            if (img % self.denom).any():
                raise NotDivisible("image exponent is not integral")
            img = img // self.denom
        return tuple(int(x) for x in img)

    def __call__(self, x):
        if x.form != self.source:
            raise FormMismatch("element not in the source torus")
        out = TorusElement(self.target)
        t = {}
        for k, c in x.terms.items():
            img = self.apply_exponent(k)
            nc = t.get(img)
            nc = c if nc is None else nc + c
            if nc:
                t[img] = nc
            else:
                del t[img]
        out.terms = t
        return out


# -- serialization ------------------------------------------------------


def element_to_jsonable(x):
    """Deterministic JSON form: sparse exponents plus scalar term lists."""
    out = []
    for k in sorted(x.terms, reverse=True):
        c = x.terms[k]
        out.append(
            {
                "exponents": {
                    str(x.form.vertices[i]): int(e) for i, e in enumerate(k) if e
                },
                "coeff": [[d, c.terms[d]] for d in sorted(c.terms)],
            }
        )
    return out


def element_from_jsonable(form, data):
    by_name = {str(v): i for i, v in enumerate(form.vertices)}
    terms = {}
    for rec in data:
        k = [0] * form.rank
        for vname, e in rec["exponents"].items():
            k[by_name[vname]] = int(e)
        terms[tuple(k)] = OmegaScalar({int(d): int(c) for d, c in rec["coeff"]})
    return TorusElement(form, terms)


def element_to_json(x):
    return json.dumps(element_to_jsonable(x), sort_keys=True)


def element_from_json(form, text):
    return element_from_jsonable(form, json.loads(text))
