"""Exact arithmetic in the ground ring Z[w^(1/2), w^(-1/2)].

Every scalar is a finite integer combination of half-integer powers of the
formal unit w.  Exponents are stored doubled, so w^(k/2) is keyed by the
integer k and no floating point ever appears.  The derived units are
xi = w^n and q = w^(n^2).
"""

from __future__ import annotations

import re


class OmegaScalar:
    """An element of Z[w^(1/2), w^(-1/2)] in canonical form.

    ``terms`` maps doubled exponents to nonzero integer coefficients:
    ``{k: c}`` represents ``c * w^(k/2)``.  Instances are immutable and
    hashable; all arithmetic returns new canonical scalars.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for k, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    nc = t.get(k, 0) + c
                    if nc:
                        t[k] = nc
                    else:
                        del t[k]
        object.__setattr__(self, "terms", t)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("OmegaScalar is immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def integer(c):
        return OmegaScalar({0: c} if c else {})

    @staticmethod
    def unit(doubled_exp, coeff=1):
        """The monomial coeff * w^(doubled_exp / 2)."""
        return OmegaScalar({doubled_exp: coeff})

    # -- ring structure ----------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {0: 1}

    def __add__(self, other):
        if not isinstance(other, OmegaScalar):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        t = dict(a)
        for k, c in b.items():
            nc = t.get(k, 0) + c
            if nc:
                t[k] = nc
            else:
                t.pop(k, None)
        return OmegaScalar._raw(t)

    def __neg__(self):
        return OmegaScalar._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, OmegaScalar):
            return NotImplemented
        t = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = ka + kb
                nc = t.get(k, 0) + ca * cb
                if nc:
                    t[k] = nc
                else:
                    del t[k]
        return OmegaScalar._raw(t)

    @staticmethod
    def _raw(terms):
        s = OmegaScalar()
        object.__setattr__(s, "terms", terms)
        return s

    def shift(self, doubled_exp):
        """Multiply by w^(doubled_exp / 2)."""
        if not doubled_exp:
            return self
        return OmegaScalar._raw({k + doubled_exp: c for k, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, OmegaScalar) and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    # -- division and units ------------------------------------------

    def is_unit(self):
        """True iff the scalar is +-w^(k/2) for some k."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError("only monomials +-w^(k/2) are invertible")
        (k, c), = self.terms.items()
        return OmegaScalar({-k: c})

    def exact_div(self, other):
        """Return self / other if it exists in the ring, else None.

        Laurent polynomial long division in the variable u = w^(1/2);
        the quotient is accepted only when the remainder vanishes and all
        quotient coefficients are integers.
        """
        if not other.terms:
            raise ZeroDivisionError("division by zero scalar")
        if not self.terms:
            return OmegaScalar()
        lead_d = max(other.terms)
        cd = other.terms[lead_d]
        # the lowest term of an exact quotient is forced: min(N) - min(d)
        low_bound = min(self.terms) - min(other.terms)
        rem = dict(self.terms)
        quot = {}
        while rem:
            lead_r = max(rem)
            cr = rem[lead_r]
            if cr % cd:
                return None
            k = lead_r - lead_d
            if k < low_bound:
                return None
            c = cr // cd
            quot[k] = c
            for kd, cdd in other.terms.items():
                kk = kd + k
                nc = rem.get(kk, 0) - c * cdd
                if nc:
                    rem[kk] = nc
                else:
                    rem.pop(kk, None)
        return OmegaScalar(quot)

    # -- reflection ---------------------------------------------------

    def reflect(self):
        """The ring involution w^(1/2) -> w^(-1/2)."""
        return OmegaScalar._raw({-k: c for k, c in self.terms.items()})

    # -- rendering ----------------------------------------------------

    def __repr__(self):
        return "OmegaScalar(%s)" % self

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            if k == 0:
                mono = str(c)
            else:
                exp = str(k // 2) if k % 2 == 0 else "%d/2" % k
                mono = "%d*w^%s" % (c, exp)
            if parts and not mono.startswith("-"):
                parts.append("+" + mono)
            else:
                parts.append(mono)
        return "".join(parts)


_TERM_RE = re.compile(r"^([+-]?\d+)(?:\*w\^(-?\d+(?:/2)?))?$")


def parse_scalar(text):
    """Parse the rendering produced by ``str(OmegaScalar)``, exactly."""
    s = text.replace(" ", "")
    if s == "0":
        return OmegaScalar()
    terms = {}
    chunks = re.findall(r"[+-]?[^+-]+", s)
    if "".join(chunks) != s:
        raise ValueError("unparsable scalar: %r" % text)
    for chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError("unparsable scalar term: %r" % chunk)
        c = int(m.group(1))
        e = m.group(2)
        if e is None:
            k = 0
        elif e.endswith("/2"):
            k = int(e[:-2])
        else:
            k = 2 * int(e)
        terms[k] = terms.get(k, 0) + c
    return OmegaScalar(terms)


ZERO = OmegaScalar()
ONE = OmegaScalar({0: 1})


def omega_pow(doubled_exp, coeff=1):
    """The scalar coeff * w^(doubled_exp / 2)."""
    return OmegaScalar({doubled_exp: coeff})


def xi_pow(power, n, coeff=1):
    """xi^power where xi = w^n, i.e. w^(n * power)."""
    return OmegaScalar({2 * n * power: coeff})


def xi_half_pow(doubled_power, n, coeff=1):
    """xi^(doubled_power / 2) where xi = w^n."""
    return OmegaScalar({n * doubled_power: coeff})


def q_pow(power, n, coeff=1):
    """q^power where q = w^(n^2)."""
    return OmegaScalar({2 * n * n * power: coeff})
