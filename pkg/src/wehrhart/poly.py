"""Sparse multivariate polynomials over the rationals.

Variables live in named blocks (weight coordinates ``x``, right-hand sides
``b``, perturbations ``h``, dilation ``t`` and series variable ``z``) so that
whole blocks can be substituted or differentiated without relying on naming
conventions.  Coefficients are exact: ``int`` or ``fractions.Fraction``.
"""

from __future__ import annotations

import ast
import re
from enum import IntEnum
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from . import kernels
from .errors import MissingAssignment

WIDTH = kernels.WIDTH
MASK = kernels.MASK
_NBLOCKS = 5


class Block(IntEnum):
    X = 0
    B = 1
    H = 2
    T = 3
    Z = 4


class VarId(NamedTuple):
    block: Block
    index: int = 0

    @property
    def slot(self) -> int:
        return self.index * _NBLOCKS + int(self.block)

    @property
    def shift(self) -> int:
        return self.slot * WIDTH

    @property
    def default_name(self) -> str:
        if self.block in (Block.T, Block.Z):
            return self.block.name.lower()
        return f"{self.block.name.lower()}{self.index + 1}"

    def __str__(self):
        return self.default_name


def X(i: int) -> VarId:
    return VarId(Block.X, i)


def B(i: int) -> VarId:
    return VarId(Block.B, i)


def H(i: int) -> VarId:
    return VarId(Block.H, i)


T = VarId(Block.T, 0)
Z = VarId(Block.Z, 0)


def _var_of_slot(s: int) -> VarId:
    return VarId(Block(s % _NBLOCKS), s // _NBLOCKS)


def decode(key: int) -> List[Tuple[VarId, int]]:
    """Unpack a monomial key into ``(variable, exponent)`` pairs."""
    out = []
    s = 0
    while key:
        e = key & MASK
        if e:
            out.append((_var_of_slot(s), e))
        key >>= WIDTH
        s += 1
    return out


def encode(monomial: Mapping[VarId, int]) -> int:
    key = 0
    for v, e in monomial.items():
        if e < 0 or e > MASK:
            raise OverflowError(f"exponent {e} of {v} outside 0..{MASK}")
        key += e << v.shift
    return key


def _key_degree(key: int) -> int:
    d = 0
    while key:
        d += key & MASK
        key >>= WIDTH
    return d


def _coerce_coeff(c):
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _coerce_coeff(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _coerce_coeff(Fraction(c))
    raise TypeError(f"inexact or unsupported coefficient {c!r}")


def format_rational(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class MPoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_deg", "_hash")

    def __init__(self, terms: Optional[Mapping] = None):
        if terms is None:
            self._terms = {}
        else:
            self._terms = {}
            for k, c in terms.items():
                if not isinstance(k, int):
                    k = encode(dict(k))
                c = _coerce_coeff(c)
                if c:
                    self._terms[k] = self._terms.get(k, 0) + c
            self._terms = {k: c for k, c in self._terms.items() if c}
        self._deg = None
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        # caller guarantees: int keys, no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._deg = None
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "MPoly":
        c = _coerce_coeff(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, v: VarId) -> "MPoly":
        return cls._raw({1 << v.shift: 1})

    @classmethod
    def monomial(cls, exponents: Mapping[VarId, int], coeff=1) -> "MPoly":
        return cls({encode(exponents): coeff})

    @classmethod
    def coerce(cls, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return cls.constant(other)

    # -- inspection -------------------------------------------------------

    @property
    def raw_terms(self) -> dict:
        """The packed-key term dict; treat as read-only."""
        return self._terms

    def terms(self) -> List[Tuple[Dict[VarId, int], Fraction]]:
        """Terms as ``(monomial, coefficient)`` pairs in canonical order."""
        return [(dict(decode(k)), Fraction(c)) for k, c in self._sorted_items()]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_term(self) -> Fraction:
        return Fraction(self._terms.get(0, 0))

    def coefficient(self, monomial: Mapping[VarId, int]) -> Fraction:
        return Fraction(self._terms.get(encode(monomial), 0))

    def variables(self) -> List[VarId]:
        acc = 0
        for k in self._terms:
            acc |= k
        out = []
        s = 0
        while acc:
            if acc & MASK:
                out.append(_var_of_slot(s))
            acc >>= WIDTH
            s += 1
        return sorted(out)

    def degree(self, block: Optional[Block] = None) -> int:
        """Total degree, or degree in one block; the zero polynomial has -1."""
        if block is None:
            if self._deg is None:
                self._deg = max((_key_degree(k) for k in self._terms), default=-1)
            return self._deg
        best = -1
        for k in self._terms:
            best = max(best, sum(e for v, e in decode(k) if v.block == block))
        return best

    def degree_in(self, v: VarId) -> int:
        sh = v.shift
        return max(((k >> sh) & MASK for k in self._terms), default=-1)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = MPoly.constant(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        kernels.add_into(out, other._terms)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({k: -c for k, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = MPoly.constant(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        kernels.add_into(out, other._terms, -1)
        return MPoly._raw(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                c = _coerce_coeff(other)
            except TypeError:
                return NotImplemented
            return MPoly._raw(kernels.scale(self._terms, c))
        if self._terms and other._terms and self.degree() + other.degree() > MASK:
            raise OverflowError("product degree exceeds the packed exponent width")
        return MPoly._raw(kernels.mul(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _coerce_coeff(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (Fraction(1) / c)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        if self._terms and self.degree() * e > MASK:
            raise OverflowError("power degree exceeds the packed exponent width")
        result = {0: 1}
        base = self._terms
        while e:
            if e & 1:
                result = kernels.mul(result, base)
            e >>= 1
            if e:
                base = kernels.mul(base, base)
        return MPoly._raw(result)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._terms == other._terms
        try:
            return self._terms == MPoly.constant(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution ---------------------------------------

    def partial(self, v: VarId, order: int = 1) -> "MPoly":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        if order == 0:
            return self
        return MPoly._raw(kernels.partial(self._terms, v.shift, order))

    def substitute(self, mapping: Mapping[VarId, object]) -> "MPoly":
        """Simultaneously replace variables by polynomials (or constants)."""
        images = [(v.shift, MPoly.coerce(p)._terms) for v, p in mapping.items()]
        if not images:
            return self
        powers: Dict[Tuple[int, int], dict] = {}

        def power(sh, img, e):
            got = powers.get((sh, e))
            if got is None:
                got = img if e == 1 else kernels.mul(power(sh, img, e - 1), img)
                powers[(sh, e)] = got
            return got

        out: dict = {}
        for key, c in self._terms.items():
            rest = key
            acc = {0: c}
            for sh, img in images:
                e = (key >> sh) & MASK
                if e:
                    rest -= e << sh
                    acc = kernels.mul(acc, power(sh, img, e))
                    if not acc:
                        break
            if not acc:
                continue
            if rest:
                acc = {k + rest: v for k, v in acc.items()}
            kernels.add_into(out, acc)
        return MPoly._raw(out)

    def set_zero(self, variables: Iterable[VarId]) -> "MPoly":
        terms = self._terms
        for v in variables:
            terms = kernels.drop_var(terms, v.shift)
        return MPoly._raw(terms if terms is not self._terms else dict(terms))

    def eval(self, point: Mapping[VarId, object]) -> Fraction:
        values: List = []
        for v, x in point.items():
            s = v.slot
            if s >= len(values):
                values.extend([None] * (s + 1 - len(values)))
            values[s] = _coerce_coeff(x)
        try:
            return Fraction(kernels.evaluate(self._terms, values))
        except LookupError as exc:
            raise MissingAssignment(
                f"no value for variable {_var_of_slot(exc.args[0])}"
            ) from None

    __call__ = eval

    def homogeneous_components(self, block: Optional[Block] = None) -> List[Tuple[int, "MPoly"]]:
        """Split by degree in ``block`` (all variables when ``None``),
        highest degree first."""
        groups: Dict[int, dict] = {}
        for k, c in self._terms.items():
            if block is None:
                deg = _key_degree(k)
            else:
                deg = sum(e for v, e in decode(k) if v.block == block)
            groups.setdefault(deg, {})[k] = c
        return [(deg, MPoly._raw(groups[deg])) for deg in sorted(groups, reverse=True)]

    def is_homogeneous(self, block: Optional[Block] = None) -> bool:
        return len(self.homogeneous_components(block)) <= 1

    def map_coefficients(self, fn) -> "MPoly":
        return MPoly({k: fn(Fraction(c)) for k, c in self._terms.items()})

    # -- canonical order and serialization --------------------------------

    def _sorted_items(self):
        variables = self.variables()

        def sort_key(item):
            key = item[0]
            exps = [(key >> v.shift) & MASK for v in variables]
            return (-sum(exps), [-e for e in exps])

        return sorted(self._terms.items(), key=sort_key)

    def to_str(self, names: Optional[Mapping[VarId, str]] = None) -> str:
        if not self._terms:
            return "0"
        names = names or {}
        parts = []
        for key, c in self._sorted_items():
            c = Fraction(c)
            mono = "*".join(
                (names.get(v) or v.default_name) + (f"^{e}" if e > 1 else "")
                for v, e in sorted(decode(key))
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.to_str()!r})"

    def to_json(self, names: Optional[Mapping[VarId, str]] = None) -> dict:
        names = names or {}
        return {
            "terms": [
                {
                    "coeff": format_rational(c),
                    "monomial": {
                        (names.get(v) or v.default_name): e for v, e in sorted(decode(k))
                    },
                }
                for k, c in self._sorted_items()
            ]
        }

    @classmethod
    def from_json(cls, obj: Mapping, names: Optional[Mapping[str, VarId]] = None) -> "MPoly":
        out = {}
        for term in obj["terms"]:
            mono = {resolve_name(n, names): int(e) for n, e in term["monomial"].items()}
            k = encode(mono)
            out[k] = out.get(k, 0) + _coerce_coeff(Fraction(str(term["coeff"])))
        return cls(out)

    @classmethod
    def parse(cls, text: str, names: Optional[Mapping[str, VarId]] = None) -> "MPoly":
        """Parse ``"1/24*b12^4 - 3*x1*x2 + 2"``-style expressions."""
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None
        return _build(tree.body, names)


_NAME_RE = re.compile(r"([xbhtz])(\d*)\Z")


def resolve_name(name: str, names: Optional[Mapping[str, VarId]] = None) -> VarId:
    if names and name in names:
        return names[name]
    m = _NAME_RE.match(name)
    if not m:
        raise ValueError(f"unknown variable name {name!r}")
    block = Block[m.group(1).upper()]
    if block in (Block.T, Block.Z):
        if m.group(2):
            raise ValueError(f"variable {name!r} takes no index")
        return VarId(block, 0)
    if not m.group(2) or int(m.group(2)) < 1:
        raise ValueError(f"variable {name!r} needs a 1-based index")
    return VarId(block, int(m.group(2)) - 1)


def _build(node, names):
    if isinstance(node, ast.BinOp):
        left = _build(node.left, names)
        if isinstance(node.op, ast.Pow):
            exp = _build(node.right, names)
            if not exp.is_constant() or exp.constant_term().denominator != 1:
                raise ValueError("exponents must be nonnegative integers")
            return left ** int(exp.constant_term())
        right = _build(node.right, names)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant():
                raise ValueError("division by a non-constant polynomial")
            return left / right.constant_term()
    elif isinstance(node, ast.UnaryOp):
        inner = _build(node.operand, names)
        if isinstance(node.op, ast.USub):
            return -inner
        if isinstance(node.op, ast.UAdd):
            return inner
    elif isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return MPoly.constant(node.value)
    elif isinstance(node, ast.Name):
        return MPoly.var(resolve_name(node.id, names))
    raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")


def arith(p: MPoly, q: MPoly, op: str) -> MPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: MPoly, mapping: Mapping[VarId, object]) -> MPoly:
    return p.substitute(mapping)


def partial(p: MPoly, v: VarId, order: int = 1) -> MPoly:
    return p.partial(v, order)


def evaluate(p: MPoly, point: Mapping[VarId, object]) -> Fraction:
    return p.eval(point)


def homogeneous_components(p: MPoly, block: Optional[Block] = None) -> List[Tuple[int, MPoly]]:
    return p.homogeneous_components(block)
