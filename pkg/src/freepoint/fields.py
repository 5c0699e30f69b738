"""Finite field towers with exact, dense polynomial arithmetic.

A tower is a chain F_p = K_0 ⊆ K_1 ⊆ ... ⊆ K_L where each level
K_i = K_{i-1}[x] / (f_i) for a monic irreducible modulus f_i over the
level below.  Towers are immutable after construction and every modulus
is validated for irreducibility up front, so a successfully built tower
is a proof-carrying object: its levels really are fields.

Representation.  An element of K_0 is a plain integer in [0, p).  An
element of K_i for i >= 1 is a tuple of K_{i-1} values whose length is
the degree of f_i.  Coefficient vectors are constant term first
throughout the package, so (2, 0, 1) at level 1 denotes 2 + a^2 where a
is the adjoined root of f_1.  These nested tuples ("raw" values) are
hashable and comparable, which the enumeration and deduplication code
relies on.

The power basis {1, a, ..., a^(k-1)} of each level over its base is the
basis used for all coordinate extraction (`coords_over`); flattening
through several levels concatenates blocks in ascending outer exponent,
i.e. lexicographically in (outer exponent, ..., inner exponent).

Elements carry a canonical index in [0, cardinality): the flat
coordinate vector over F_p read as a little-endian base-p integer.  All
deterministic enumerations in the package (moduli scans, form and point
enumeration, sweep searches) derive their order from this index.
"""

from __future__ import annotations

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    ModulusNotIrreducible,
    NotPrime,
    RaggedInput,
    RangeError,
    TowerMismatch,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


class FieldTower:
    """A validated chain of field extensions over a prime field.

    Levels are indexed 0..L with level 0 the prime field F_p.  The
    constructor accepts modulus coefficients as JSON-style values
    (integers embed the prime subfield, nested lists spell out lower
    level coordinates) or as already-built raw values.
    """

    __slots__ = ("p", "degrees", "moduli", "_cards", "_pdegs", "key")

    def __init__(self, p: int, levels=()):
        if not isinstance(p, int) or not _is_prime(p):
            raise NotPrime(f"characteristic {p!r} is not prime")
        self.p = p
        self.degrees: list[int] = []
        # moduli[i-1] = non-leading coefficients of f_i, raw values of level i-1
        self.moduli: list[tuple] = []
        self._cards = [p]
        self._pdegs = [1]  # degree of level i over the prime field
        for spec in levels:
            if isinstance(spec, dict):
                degree, modulus = spec["degree"], spec["modulus"]
            else:
                degree, modulus = spec
            self._append_level(degree, modulus)
        self.key = (p, tuple((k, m) for k, m in zip(self.degrees, self.moduli)))

    # -- construction ------------------------------------------------

    def _append_level(self, degree: int, modulus) -> None:
        lvl = len(self.degrees)  # base level of the new extension
        if not isinstance(degree, int) or degree < 1:
            raise RaggedInput(f"level {lvl + 1}: degree must be a positive integer")
        if not isinstance(modulus, (list, tuple)) or len(modulus) != degree + 1:
            raise DegreeMismatch(
                f"level {lvl + 1}: modulus needs {degree + 1} coefficients "
                f"for degree {degree}"
            )
        coeffs = [self._value_from_json(lvl, c) for c in modulus]
        if coeffs[-1] != self.one_raw(lvl):
            raise RaggedInput(f"level {lvl + 1}: modulus is not monic")
        if degree > 1 and not _poly_is_irreducible(self, lvl, coeffs):
            raise ModulusNotIrreducible(
                f"level {lvl + 1}: modulus is reducible over level {lvl}"
            )
        self.degrees.append(degree)
        self.moduli.append(tuple(coeffs[:-1]))
        self._cards.append(self._cards[-1] ** degree)
        self._pdegs.append(self._pdegs[-1] * degree)

    def _value_from_json(self, level: int, v):
        """Interpret a JSON-style value as a raw value at `level`."""
        if isinstance(v, bool):
            raise RaggedInput("boolean is not a field value")
        if isinstance(v, int):
            return self.scalar_raw(level, v)
        if isinstance(v, FieldElement):
            if v.tower.key != self.key and v.tower.key[1][: len(self.key[1])] != self.key[1]:
                raise TowerMismatch("element from an incompatible tower")
            if v.level != level:
                raise TowerMismatch(f"expected a level-{level} value")
            return v.val
        if level == 0:
            raise RaggedInput(f"level-0 values must be integers, got {v!r}")
        if isinstance(v, (list, tuple)):
            if len(v) != self.degrees[level - 1]:
                raise RaggedInput(
                    f"level-{level} value needs {self.degrees[level - 1]} coordinates"
                )
            return tuple(self._value_from_json(level - 1, c) for c in v)
        raise RaggedInput(f"cannot interpret {v!r} as a field value")

    # -- structure queries -------------------------------------------

    @property
    def top(self) -> int:
        """Index of the highest level."""
        return len(self.degrees)

    def _check_level(self, level: int) -> None:
        if not (0 <= level <= self.top):
            raise TowerMismatch(f"no level {level} in this tower")

    def cardinality(self, level: int) -> int:
        self._check_level(level)
        return self._cards[level]

    def extension_degree(self, level: int, base_level: int = 0) -> int:
        self._check_level(level)
        self._check_level(base_level)
        if base_level > level:
            raise TowerMismatch("base level lies above the element level")
        return self._pdegs[level] // self._pdegs[base_level]

    def level_of_cardinality(self, q: int):
        """Level index whose field has exactly q elements, or None."""
        for i, c in enumerate(self._cards):
            if c == q:
                return i
        return None

    # -- raw arithmetic ----------------------------------------------

    def zero_raw(self, level: int):
        if level == 0:
            return 0
        z = self.zero_raw(level - 1)
        return (z,) * self.degrees[level - 1]

    def one_raw(self, level: int):
        return self.scalar_raw(level, 1)

    def scalar_raw(self, level: int, c: int):
        if level == 0:
            return c % self.p
        k = self.degrees[level - 1]
        z = self.zero_raw(level - 1)
        return (self.scalar_raw(level - 1, c),) + (z,) * (k - 1)

    def is_zero_raw(self, level: int, a) -> bool:
        return a == self.zero_raw(level)

    def add_raw(self, level: int, a, b):
        if level == 0:
            return (a + b) % self.p
        if level == 1:
            p = self.p
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(self.add_raw(level - 1, x, y) for x, y in zip(a, b))

    def neg_raw(self, level: int, a):
        if level == 0:
            return (-a) % self.p
        if level == 1:
            p = self.p
            return tuple((-x) % p for x in a)
        return tuple(self.neg_raw(level - 1, x) for x in a)

    def sub_raw(self, level: int, a, b):
        if level == 0:
            return (a - b) % self.p
        if level == 1:
            p = self.p
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(self.sub_raw(level - 1, x, y) for x, y in zip(a, b))

    def mul_raw(self, level: int, a, b):
        if level == 0:
            return (a * b) % self.p
        k = self.degrees[level - 1]
        if k == 1:
            # K[x]/(x + c): the residue ring is the base field itself.
            return (self.mul_raw(level - 1, a[0], b[0]),)
        mod = self.moduli[level - 1]
        if level == 1:
            p = self.p
            prod = [0] * (2 * k - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        prod[i + j] += ai * bj
            for t in range(2 * k - 2, k - 1, -1):
                c = prod[t] % p
                if c:
                    base = t - k
                    for j, mj in enumerate(mod):
                        if mj:
                            prod[base + j] -= c * mj
            return tuple(v % p for v in prod[:k])
        lower = level - 1
        zero = self.zero_raw(lower)
        prod = [zero] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai != zero:
                for j, bj in enumerate(b):
                    prod[i + j] = self.add_raw(lower, prod[i + j], self.mul_raw(lower, ai, bj))
        for t in range(2 * k - 2, k - 1, -1):
            c = prod[t]
            if c != zero:
                base = t - k
                for j, mj in enumerate(mod):
                    if mj != zero:
                        prod[base + j] = self.sub_raw(
                            lower, prod[base + j], self.mul_raw(lower, c, mj)
                        )
        return tuple(prod[:k])

    def inv_raw(self, level: int, a):
        if self.is_zero_raw(level, a):
            raise DivisionByZero("inverse of zero")
        if level == 0:
            return pow(a, self.p - 2, self.p)
        k = self.degrees[level - 1]
        if k == 1:
            return (self.inv_raw(level - 1, a[0]),)
        lower = level - 1
        f = list(self.moduli[level - 1]) + [self.one_raw(lower)]
        # extended Euclid: find s with s*a == gcd (a unit) modulo f
        r0, r1 = f, _ptrim(self, lower, list(a))
        s0, s1 = [], [self.one_raw(lower)]
        while r1:
            q, r = _pdivmod(self, lower, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(self, lower, s0, _pmul(self, lower, q, s1))
        # r0 is a nonzero constant since f is irreducible and a != 0
        c = self.inv_raw(lower, r0[0])
        inv = [self.mul_raw(lower, c, x) for x in s0]
        inv += [self.zero_raw(lower)] * (k - len(inv))
        return tuple(inv[:k])

    def pow_raw(self, level: int, a, e: int):
        if e < 0:
            a = self.inv_raw(level, a)
            e = -e
        result = self.one_raw(level)
        base = a
        while e:
            if e & 1:
                result = self.mul_raw(level, result, base)
            base = self.mul_raw(level, base, base)
            e >>= 1
        return result

    def embed_raw(self, level_from: int, level_to: int, a):
        if level_from > level_to:
            raise TowerMismatch("cannot embed downward")
        for lvl in range(level_from, level_to):
            k = self.degrees[lvl]
            a = (a,) + (self.zero_raw(lvl),) * (k - 1)
        return a

    # -- element indexing and enumeration ----------------------------

    def _flatten_raw(self, level: int, a, out: list) -> None:
        if level == 0:
            out.append(a)
        else:
            for c in a:
                self._flatten_raw(level - 1, c, out)

    def _unflatten_raw(self, level: int, flat, start: int):
        if level == 0:
            return flat[start]
        block = self._pdegs[level - 1]
        k = self.degrees[level - 1]
        return tuple(
            self._unflatten_raw(level - 1, flat, start + j * block) for j in range(k)
        )

    def element_index(self, x: "FieldElement") -> int:
        flat: list[int] = []
        self._flatten_raw(x.level, x.val, flat)
        idx = 0
        for c in reversed(flat):
            idx = idx * self.p + c
        return idx

    def element_at_index(self, level: int, idx: int) -> "FieldElement":
        self._check_level(level)
        if not (0 <= idx < self._cards[level]):
            raise RangeError(f"index {idx} out of range for level {level}")
        flat = []
        for _ in range(self._pdegs[level]):
            flat.append(idx % self.p)
            idx //= self.p
        return FieldElement(self, level, self._unflatten_raw(level, flat, 0))

    def elements(self, level: int):
        """All elements of a level in canonical index order."""
        for idx in range(self.cardinality(level)):
            yield self.element_at_index(level, idx)

    # -- public element constructors ----------------------------------

    def element(self, level: int, value) -> "FieldElement":
        self._check_level(level)
        return FieldElement(self, level, self._value_from_json(level, value))

    def zero(self, level: int) -> "FieldElement":
        self._check_level(level)
        return FieldElement(self, level, self.zero_raw(level))

    def one(self, level: int) -> "FieldElement":
        self._check_level(level)
        return FieldElement(self, level, self.one_raw(level))

    def gen(self, level: int) -> "FieldElement":
        """The adjoined root of the level's modulus."""
        self._check_level(level)
        if level == 0:
            raise TowerMismatch("level 0 has no adjoined generator")
        k = self.degrees[level - 1]
        if k == 1:
            return FieldElement(self, level, (self.neg_raw(level - 1, self.moduli[level - 1][0]),))
        z = self.zero_raw(level - 1)
        val = (z, self.one_raw(level - 1)) + (z,) * (k - 2)
        return FieldElement(self, level, val)

    def adopt(self, x: "FieldElement") -> "FieldElement":
        """Re-tag an element of a prefix-compatible tower into this one."""
        if x.tower.key[0] != self.p or self.key[1][: x.level] != x.tower.key[1][: x.level]:
            raise TowerMismatch("towers do not share a common prefix at this level")
        return FieldElement(self, x.level, x.val)

    # -- serialization -------------------------------------------------

    def raw_to_json(self, level: int, a):
        if level == 0:
            return a
        return [self.raw_to_json(level - 1, c) for c in a]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "levels": [
                {
                    "degree": k,
                    "modulus": [self.raw_to_json(i, c) for c in m]
                    + [self.raw_to_json(i, self.one_raw(i))],
                }
                for i, (k, m) in enumerate(zip(self.degrees, self.moduli))
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FieldTower":
        if not isinstance(d, dict) or "p" not in d:
            raise RaggedInput("tower spec must be a dict with 'p' and 'levels'")
        return cls(d["p"], d.get("levels", []))

    def __repr__(self) -> str:
        chain = "*".join(str(k) for k in self.degrees) or "1"
        return f"FieldTower(p={self.p}, degrees=[{chain}])"


class FieldElement:
    """An element of one level of a tower.  Immutable value type."""

    __slots__ = ("tower", "level", "val")

    def __init__(self, tower: FieldTower, level: int, val):
        self.tower = tower
        self.level = level
        self.val = val

    @property
    def is_zero(self) -> bool:
        return self.tower.is_zero_raw(self.level, self.val)

    def _coerce(self, other):
        t = self.tower
        if isinstance(other, int):
            return FieldElement(t, self.level, t.scalar_raw(self.level, other))
        if not isinstance(other, FieldElement):
            return None
        if other.tower is not t and other.tower.key != t.key:
            raise TowerMismatch("elements of different towers")
        if other.level == self.level:
            return other
        if other.level < self.level:
            return FieldElement(t, self.level, t.embed_raw(other.level, self.level, other.val))
        return other  # caller re-dispatches with roles swapped

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.level > self.level:
            return o + self
        return FieldElement(self.tower, self.level, self.tower.add_raw(self.level, self.val, o.val))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, self.level, self.tower.neg_raw(self.level, self.val))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.level > self.level:
            return -(o - self)
        return FieldElement(self.tower, self.level, self.tower.sub_raw(self.level, self.val, o.val))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.level > self.level:
            return o * self
        return FieldElement(self.tower, self.level, self.tower.mul_raw(self.level, self.val, o.val))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.level > self.level:
            return self._promote(o.level) / o
        return self * FieldElement(self.tower, self.level, self.tower.inv_raw(self.level, o.val))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def _promote(self, level: int) -> "FieldElement":
        return FieldElement(
            self.tower, level, self.tower.embed_raw(self.level, level, self.val)
        )

    def inverse(self) -> "FieldElement":
        return FieldElement(self.tower, self.level, self.tower.inv_raw(self.level, self.val))

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        return FieldElement(self.tower, self.level, self.tower.pow_raw(self.level, self.val, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.val == self.tower.scalar_raw(self.level, other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.tower is not self.tower and other.tower.key != self.tower.key:
            return False
        if other.level == self.level:
            return self.val == other.val
        lo, hi = (self, other) if self.level < other.level else (other, self)
        return lo._promote(hi.level).val == hi.val

    def __hash__(self):
        # Levels may differ for equal embedded values only when compared
        # explicitly; hashing uses the element's own level, and all code
        # that builds sets keeps levels homogeneous.
        return hash((self.level, self.val))

    def __bool__(self):
        return not self.is_zero

    def to_json(self):
        return self.tower.raw_to_json(self.level, self.val)

    def __repr__(self):
        return f"FieldElement(level={self.level}, {self.to_json()!r})"


# -- dense univariate polynomials over a tower level -------------------
#
# Polynomials are plain lists of raw values, constant first, no trailing
# zeros ([] is the zero polynomial).  These helpers back modulus
# validation and element inversion; they are not a public API.


def _ptrim(tower, lvl, f):
    while f and tower.is_zero_raw(lvl, f[-1]):
        f.pop()
    return f


def _padd(tower, lvl, f, g):
    n = max(len(f), len(g))
    z = tower.zero_raw(lvl)
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else z
        b = g[i] if i < len(g) else z
        out.append(tower.add_raw(lvl, a, b))
    return _ptrim(tower, lvl, out)


def _psub(tower, lvl, f, g):
    n = max(len(f), len(g))
    z = tower.zero_raw(lvl)
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else z
        b = g[i] if i < len(g) else z
        out.append(tower.sub_raw(lvl, a, b))
    return _ptrim(tower, lvl, out)


def _pmul(tower, lvl, f, g):
    if not f or not g:
        return []
    z = tower.zero_raw(lvl)
    out = [z] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a != z:
            for j, b in enumerate(g):
                out[i + j] = tower.add_raw(lvl, out[i + j], tower.mul_raw(lvl, a, b))
    return _ptrim(tower, lvl, out)


def _pdivmod(tower, lvl, f, g):
    """Quotient and remainder of f by g (g nonzero)."""
    if not g:
        raise DivisionByZero("polynomial division by zero")
    f = list(f)
    z = tower.zero_raw(lvl)
    lead_inv = tower.inv_raw(lvl, g[-1])
    dg = len(g) - 1
    if len(f) <= dg:
        return [], _ptrim(tower, lvl, f)
    quot = [z] * (len(f) - dg)
    for t in range(len(f) - 1, dg - 1, -1):
        c = tower.mul_raw(lvl, f[t], lead_inv)
        if c != z:
            quot[t - dg] = c
            for j, gj in enumerate(g):
                if gj != z:
                    f[t - dg + j] = tower.sub_raw(lvl, f[t - dg + j], tower.mul_raw(lvl, c, gj))
    return _ptrim(tower, lvl, quot), _ptrim(tower, lvl, f)


def _pgcd(tower, lvl, f, g):
    f = _ptrim(tower, lvl, list(f))
    g = _ptrim(tower, lvl, list(g))
    while g:
        _, r = _pdivmod(tower, lvl, f, g)
        f, g = g, r
    if f:
        c = tower.inv_raw(lvl, f[-1])
        f = [tower.mul_raw(lvl, c, x) for x in f]
    return f


def _ppowmod(tower, lvl, base, e: int, mod):
    _, result = _pdivmod(tower, lvl, [tower.one_raw(lvl)], mod)
    _, base = _pdivmod(tower, lvl, list(base), mod)
    while e:
        if e & 1:
            _, result = _pdivmod(tower, lvl, _pmul(tower, lvl, result, base), mod)
        _, base = _pdivmod(tower, lvl, _pmul(tower, lvl, base, base), mod)
        e >>= 1
    return result


def _poly_is_irreducible(tower, lvl, coeffs) -> bool:
    """Irreducibility of a monic polynomial over the level's field.

    Uses the standard criterion: x^(Q^k) == x mod f, and for every prime
    divisor rho of k, gcd(x^(Q^(k/rho)) - x, f) is constant.
    """
    f = _ptrim(tower, lvl, list(coeffs))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    q = tower.cardinality(lvl)
    x = [tower.zero_raw(lvl), tower.one_raw(lvl)]
    top = _ppowmod(tower, lvl, x, q**k, f)
    if top != x:
        return False
    for rho in _prime_factors(k):
        sub = _ppowmod(tower, lvl, x, q ** (k // rho), f)
        if len(_pgcd(tower, lvl, _psub(tower, lvl, sub, x), f)) != 1:
            return False
    return True


def first_irreducible_modulus(tower: FieldTower, level: int, degree: int) -> list:
    """First monic irreducible of the given degree over `level`.

    Candidates are scanned in canonical order: the non-leading coefficient
    vector (constant first) runs through element indices little-endian.
    Deterministic, so independently built towers agree.
    """
    if degree < 1:
        raise RangeError("degree must be positive")
    q = tower.cardinality(level)
    one = tower.one_raw(level)
    for idx in range(q**degree):
        digits = []
        v = idx
        for _ in range(degree):
            digits.append(v % q)
            v //= q
        if degree > 1 and digits[0] == 0:
            continue  # constant term 0 means x divides the candidate
        coeffs = [tower.element_at_index(level, dgt).val for dgt in digits] + [one]
        if _poly_is_irreducible(tower, level, coeffs):
            return coeffs
    raise RangeError(f"no irreducible of degree {degree} found (impossible)")


def make_tower(p: int, levels=()) -> FieldTower:
    """Build and validate a tower from (degree, modulus) pairs."""
    return FieldTower(p, levels)


def extended_tower(tower: FieldTower, degree: int, modulus=None) -> FieldTower:
    """A new tower with one extra level of the given degree on top.

    When no modulus is supplied the deterministic first irreducible is
    used.  Elements of the original tower can be moved over with
    `adopt`; their raw values are unchanged.
    """
    if modulus is None:
        modulus = first_irreducible_modulus(tower, tower.top, degree)
    spec = [
        {"degree": k, "modulus": [tower.raw_to_json(i, c) for c in m] + [1]}
        for i, (k, m) in enumerate(zip(tower.degrees, tower.moduli))
    ]
    new = FieldTower(tower.p, spec)
    new._append_level(degree, modulus)
    new.key = (new.p, tuple((k, m) for k, m in zip(new.degrees, new.moduli)))
    return new


def embed(x: FieldElement, level: int) -> FieldElement:
    """The image of x in a higher level of its own tower."""
    x.tower._check_level(level)
    if level < x.level:
        raise TowerMismatch("cannot embed downward")
    return x._promote(level)


def frobenius(x: FieldElement, base_level: int) -> FieldElement:
    """x ↦ x^Q where Q is the cardinality of the base level."""
    x.tower._check_level(base_level)
    if base_level > x.level:
        raise TowerMismatch("base level lies above the element")
    return x ** x.tower.cardinality(base_level)

def coords_over(x: FieldElement, base_level: int) -> list[FieldElement]:
    """Coordinates of x over a subfield in the product power basis.

    The basis is ordered lexicographically in (outer exponent, ...,
    inner exponent); reassembling sum(coord_t * basis_t) reproduces x.
    """
    t = x.tower
    t._check_level(base_level)
    if base_level > x.level:
        raise TowerMismatch("base level lies above the element")
    vals = [x.val]
    for lvl in range(x.level, base_level, -1):
        vals = [c for v in vals for c in v]
    return [FieldElement(t, base_level, v) for v in vals]


def reassemble(coords: list[FieldElement], level: int) -> FieldElement:
    """Inverse of coords_over for coordinates listed in basis order.

    Grouping runs bottom-up: at each tower step the flat list is cut
    into consecutive chunks, the chunk index being the outer exponent.
    """
    if not coords:
        raise RaggedInput("no coordinates")
    tower = coords[0].tower
    base = coords[0].level
    vals = [c.val for c in coords]
    for lvl in range(base, level):
        k = tower.degrees[lvl]
        if len(vals) % k:
            raise DegreeMismatch("coordinate count does not match the tower degrees")
        vals = [tuple(vals[i : i + k]) for i in range(0, len(vals), k)]
    if len(vals) != 1:
        raise DegreeMismatch("coordinate count does not match the tower degrees")
    return FieldElement(tower, level, vals[0])


def basis_over(tower: FieldTower, level: int, base_level: int) -> list[FieldElement]:
    """The product power basis of `level` over `base_level`, in the
    same order `coords_over` uses."""
    m = tower.extension_degree(level, base_level)
    out = []
    for t in range(m):
        coords = [tower.zero(base_level)] * m
        coords[t] = tower.one(base_level)
        out.append(reassemble(coords, level))
    return out


def element_degree(x: FieldElement, base_level: int) -> int:
    """Degree of the minimal polynomial of x over the base level."""
    q = x.tower.cardinality(base_level)
    if base_level > x.level:
        raise TowerMismatch("base level lies above the element")
    y = x ** q
    k = 1
    while y != x:
        y = y ** q
        k += 1
    assert x.tower.extension_degree(x.level, base_level) % k == 0
    return k
