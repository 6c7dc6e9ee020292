"""Arithmetic and normal forms for elements of a spherical-type Artin-Tits group.

An element is stored once and for all in classical left normal form: a power
of the Garside element Delta plus a tuple of simple factors (ids of Coxeter
group elements), consecutive factors satisfying the left-greedy condition.
Views with respect to the derived Garside structures with Garside element
Delta^N are computed on demand and never stored, so equality is always a
comparison of classical forms.

The lattice operations reduce to one primitive: the greatest common prefix,
computed by repeatedly stripping the meet of the leading simple factors.  The
suffix-order versions go through the word-reversing anti-automorphism, and
joins through inversion, which exchanges the prefix and suffix orders.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coxeter import GeneratorSet, GroupContext
from .errors import ContextMismatch, NotSimple, ParseError

_TOKEN_RE = re.compile(r"s(\d+)(\^-1)?")
_DELTA_RE = re.compile(r"(?:Δ|D)\^(-?\d+)")


def _normalize(ctx: GroupContext, power: int, factors) -> tuple[int, tuple[int, ...]]:
    """Left-greedy normalization: slide mass to the left until every adjacent
    pair is normal, then absorb leading Delta factors into the power."""
    fs = [f for f in factors if f != ctx.identity]
    changed = True
    while changed:
        changed = False
        for i in range(len(fs) - 1):
            x, y = fs[i], fs[i + 1]
            if y == ctx.identity:
                continue
            d = ctx.w_meet(ctx.w_rcomp(x), y)
            if d != ctx.identity:
                fs[i] = ctx.w_mul(x, d)
                fs[i + 1] = ctx.w_mul(ctx.w_inv(d), y)
                changed = True
        if changed:
            fs = [f for f in fs if f != ctx.identity]
    k = 0
    while k < len(fs) and fs[k] == ctx.delta:
        k += 1
    return power + k, tuple(fs[k:])


class GroupElement:
    """An element of A_S in classical left normal form Delta^p x_1 ... x_r."""

    __slots__ = ("ctx", "power", "factors", "_hash")

    def __init__(self, ctx: GroupContext, power: int = 0, factors=(), *, normalized: bool = False):
        self.ctx = ctx
        if normalized:
            self.power, self.factors = power, tuple(factors)
        else:
            self.power, self.factors = _normalize(ctx, power, factors)
        self._hash = hash((self.power, self.factors))

    # ----------------------------------------------------------- constructors

    @staticmethod
    def identity(ctx: GroupContext) -> "GroupElement":
        return GroupElement(ctx, 0, (), normalized=True)

    @staticmethod
    def generator(ctx: GroupContext, i: int) -> "GroupElement":
        if not 0 <= i < ctx.rank:
            raise ParseError(f"generator index {i} out of range")
        return GroupElement(ctx, 0, (ctx.gens[i],), normalized=True)

    @staticmethod
    def delta_power(ctx: GroupContext, k: int = 1) -> "GroupElement":
        return GroupElement(ctx, k, (), normalized=True)

    @staticmethod
    def from_simple(ctx: GroupContext, wid: int) -> "GroupElement":
        if wid == ctx.identity:
            return GroupElement.identity(ctx)
        if wid == ctx.delta:
            return GroupElement.delta_power(ctx, 1)
        return GroupElement(ctx, 0, (wid,), normalized=True)

    @staticmethod
    def from_letters(ctx: GroupContext, letters) -> "GroupElement":
        """Build from a signed word: an iterable of (generator index, +-1)."""
        out = GroupElement.identity(ctx)
        for i, sign in letters:
            g = GroupElement.generator(ctx, i)
            out = out * (g if sign > 0 else g.inverse())
        return out

    # ------------------------------------------------------------- invariants

    def inf(self) -> int:
        return self.power

    def canonical_length(self) -> int:
        return len(self.factors)

    def sup(self) -> int:
        return self.power + len(self.factors)

    def is_identity(self) -> bool:
        return self.power == 0 and not self.factors

    def is_positive(self) -> bool:
        return self.power >= 0

    def is_delta_power(self) -> bool:
        return not self.factors

    def is_simple(self) -> bool:
        """Simple for the classical structure: a positive prefix of Delta."""
        return self.is_positive() and self.sup() <= 1

    def simple_id(self) -> int:
        """The Coxeter element realizing this classical simple element."""
        if not self.is_simple():
            raise NotSimple(f"{self} is not simple for the classical structure")
        if self.power == 1:
            return self.ctx.delta
        return self.factors[0] if self.factors else self.ctx.identity

    def word_length(self) -> int:
        """Letter count of the shortest positive word (positive elements only)."""
        ctx = self.ctx
        return self.power * ctx.delta_length + sum(ctx.w_len(f) for f in self.factors)

    # ------------------------------------------------------------- arithmetic

    def _require_same(self, other: "GroupElement") -> None:
        if self.ctx is not other.ctx:
            raise ContextMismatch("elements belong to different group contexts")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._require_same(other)
        ctx = self.ctx
        shifted = tuple(ctx.w_tau_pow(f, other.power) for f in self.factors)
        return GroupElement(ctx, self.power + other.power, shifted + other.factors)

    def inverse(self) -> "GroupElement":
        ctx, a, fs = self.ctx, self.power, self.factors
        r = len(fs)
        parts = tuple(
            ctx.w_tau_pow(ctx.w_lcomp(fs[r - 1 - i]), -(r - 1 - i) - a)
            for i in range(r)
        )
        return GroupElement(ctx, -a - r, parts)

    def __pow__(self, m: int) -> "GroupElement":
        base = self if m >= 0 else self.inverse()
        out = GroupElement.identity(self.ctx)
        for _ in range(abs(m)):
            out = out * base
        return out

    def conjugate_by(self, g: "GroupElement") -> "GroupElement":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def shift(self, k: int) -> "GroupElement":
        """Left multiplication by Delta^k (the normal form just shifts)."""
        return GroupElement(self.ctx, self.power + k, self.factors, normalized=True)

    def tau(self, k: int = 1) -> "GroupElement":
        """Conjugation by Delta^k."""
        ctx = self.ctx
        return GroupElement(
            ctx, self.power, tuple(ctx.w_tau_pow(f, k) for f in self.factors), normalized=True
        )

    def reverse(self) -> "GroupElement":
        """The word-reversing anti-automorphism (reverse any representing word)."""
        ctx = self.ctx
        parts = tuple(ctx.w_inv(f) for f in reversed(self.factors))
        return GroupElement(ctx, 0, parts) * GroupElement.delta_power(ctx, self.power)

    # ------------------------------------------------------------ comparisons

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.ctx is other.ctx
            and self.power == other.power
            and self.factors == other.factors
        )

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        ctx = self.ctx
        return (self.power, len(self.factors), tuple(ctx.w_word(f) for f in self.factors))

    # ------------------------------------------------------------- formatting

    def factor_words(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.ctx.w_word(f) for f in self.factors)

    def as_signed_word(self) -> list[tuple[int, int]]:
        """A signed word (generator, sign) representing this element."""
        ctx = self.ctx
        out: list[tuple[int, int]] = []
        dword = ctx.w_word(ctx.delta)
        if self.power > 0:
            out.extend((s, 1) for _ in range(self.power) for s in dword)
        elif self.power < 0:
            out.extend((s, -1) for _ in range(-self.power) for s in reversed(dword))
        for f in self.factors:
            out.extend((s, 1) for s in ctx.w_word(f))
        return out

    def __repr__(self) -> str:
        return format_element(self)


def format_word(ctx: GroupContext, word) -> str:
    return " ".join(f"s{s + 1}" for s in word)


def format_signed_word(ctx: GroupContext, letters) -> str:
    return " ".join(f"s{s + 1}" if sign > 0 else f"s{s + 1}^-1" for s, sign in letters)


def format_element(u: GroupElement) -> str:
    """Render as 'Δ^p · (f1)(f2)...'; bare 'Δ^p' for powers of Delta."""
    head = f"Δ^{u.power}"
    if not u.factors:
        return head
    body = "".join(f"({format_word(u.ctx, w)})" for w in u.factor_words())
    return f"{head} · {body}"


def parse_word(ctx: GroupContext, text: str) -> GroupElement:
    """Parse a signed word: whitespace-separated tokens sK or sK^-1."""
    letters = []
    for tok in text.split():
        m = _TOKEN_RE.fullmatch(tok)
        if not m:
            raise ParseError(f"bad token {tok!r} (expected sK or sK^-1)")
        idx = int(m.group(1)) - 1
        if not 0 <= idx < ctx.rank:
            raise ParseError(f"generator {tok!r} out of range for rank {ctx.rank}")
        letters.append((idx, -1 if m.group(2) else 1))
    return GroupElement.from_letters(ctx, letters)


def parse_element(ctx: GroupContext, text: str) -> GroupElement:
    """Parse either plain signed words or the 'Δ^p · (..)(..)' rendering."""
    text = text.strip()
    m = _DELTA_RE.match(text)
    if not m:
        return parse_word(ctx, text)
    out = GroupElement.delta_power(ctx, int(m.group(1)))
    rest = text[m.end():].lstrip(" ·")
    for group in re.findall(r"\(([^()]*)\)", rest):
        out = out * parse_word(ctx, group)
    return out


# ----------------------------------------------------------------- lattice ops


def _first_simple(u: GroupElement) -> int:
    """Leading simple factor of a positive element, Delta factors included."""
    if u.power > 0:
        return u.ctx.delta
    return u.factors[0] if u.factors else u.ctx.identity


def meet_prefix(u: GroupElement, v: GroupElement) -> GroupElement:
    """Greatest common prefix: w with w =< u, w =< v, maximal such."""
    u._require_same(v)
    ctx = u.ctx
    k = min(u.power, v.power)
    x, y = u.shift(-k), v.shift(-k)
    acc: list[int] = []
    while True:
        d = ctx.w_meet(_first_simple(x), _first_simple(y))
        if d == ctx.identity:
            break
        acc.append(d)
        di = GroupElement.from_simple(ctx, d).inverse()
        x, y = di * x, di * y
    return GroupElement(ctx, 0, tuple(acc)).shift(k)


def meet_suffix(u: GroupElement, v: GroupElement) -> GroupElement:
    return meet_prefix(u.reverse(), v.reverse()).reverse()


def join_prefix(u: GroupElement, v: GroupElement) -> GroupElement:
    """Least common right multiple for the prefix order."""
    return meet_suffix(u.inverse(), v.inverse()).inverse()


def join_suffix(u: GroupElement, v: GroupElement) -> GroupElement:
    return meet_prefix(u.inverse(), v.inverse()).inverse()


def prefix_le(u: GroupElement, v: GroupElement) -> bool:
    """u =< v in the prefix order (u^-1 v is positive)."""
    return (u.inverse() * v).is_positive()


def suffix_le(u: GroupElement, v: GroupElement) -> bool:
    """u =< v in the suffix order (v u^-1 is positive)."""
    return (v * u.inverse()).is_positive()


# ----------------------------------------------------------- mixed normal forms


@dataclass(frozen=True)
class MixedForm:
    """np-normal form: the element is negative^-1 * positive, with no common
    prefix between the two positive parts."""

    negative: GroupElement
    positive: GroupElement

    def element(self) -> GroupElement:
        return self.negative.inverse() * self.positive

    def support(self) -> GeneratorSet:
        return positive_support(self.negative) | positive_support(self.positive)


@dataclass(frozen=True)
class PnForm:
    """pn-normal form: the element is positive * negative^-1, with no common
    suffix between the two positive parts."""

    positive: GroupElement
    negative: GroupElement

    def element(self) -> GroupElement:
        return self.positive * self.negative.inverse()


def np_normal_form(u: GroupElement) -> MixedForm:
    ctx = u.ctx
    if u.power >= 0:
        return MixedForm(GroupElement.identity(ctx), u)
    beta = GroupElement.delta_power(ctx, -u.power)
    gamma = u.shift(-u.power)
    delta = meet_prefix(beta, gamma)
    di = delta.inverse()
    return MixedForm(di * beta, di * gamma)


def pn_normal_form(u: GroupElement) -> PnForm:
    m = np_normal_form(u.reverse())
    return PnForm(m.positive.reverse(), m.negative.reverse())


def positive_support(u: GroupElement) -> GeneratorSet:
    ctx = u.ctx
    assert u.is_positive(), "support of a raw factor list needs a positive element"
    out: set[int] = set()
    if u.power > 0:
        out.update(range(ctx.rank))
    for f in u.factors:
        out.update(ctx.w_supp(f))
    return frozenset(out)


def support(u: GroupElement) -> GeneratorSet:
    """Generators occurring in the np-normal form of u."""
    if u.is_positive():
        return positive_support(u)
    return np_normal_form(u).support()


# ------------------------------------------------------------ Delta^N structures


@dataclass(frozen=True)
class GarsideStructure:
    """The Garside structure of A_S with Garside element Delta^N."""

    ctx: GroupContext
    exponent: int = 1

    def __post_init__(self) -> None:
        if self.exponent < 1:
            raise ParseError("structure exponent must be >= 1")

    def garside_element(self) -> GroupElement:
        return GroupElement.delta_power(self.ctx, self.exponent)

    def inf(self, u: GroupElement) -> int:
        return u.power // self.exponent

    def sup(self, u: GroupElement) -> int:
        return -((-u.sup()) // self.exponent)

    def canonical_length(self, u: GroupElement) -> int:
        return self.sup(u) - self.inf(u)

    def is_simple(self, u: GroupElement) -> bool:
        return u.is_positive() and u.sup() <= self.exponent

    def tau(self, u: GroupElement, k: int = 1) -> GroupElement:
        return u.tau(self.exponent * k)

    def factors(self, u: GroupElement) -> list[GroupElement]:
        """The simple factors of u for this structure: classical factors,
        leading Delta copies included, grouped left to right in blocks of N."""
        ctx, n = self.ctx, self.exponent
        p = self.inf(u)
        lead = u.power - n * p
        padded = [GroupElement.delta_power(ctx, 1)] * lead + [
            GroupElement.from_simple(ctx, f) for f in u.factors
        ]
        blocks = []
        for i in range(0, len(padded), n):
            block = GroupElement.identity(ctx)
            for piece in padded[i:i + n]:
                block = block * piece
            blocks.append(block)
        return blocks

    def canonical_form(self, u: GroupElement) -> "CanonicalForm":
        blocks = self.factors(u)
        return CanonicalForm(
            exponent=self.exponent,
            delta_power=self.inf(u),
            factor_words=tuple(
                tuple(s for s, _ in b.as_signed_word()) for b in blocks
            ),
        )


@dataclass(frozen=True)
class CanonicalForm:
    """A printable/serializable view of a left normal form w.r.t. Delta^N."""

    exponent: int
    delta_power: int
    factor_words: tuple[tuple[int, ...], ...]

    def text(self) -> str:
        head = f"Δ^{self.delta_power}"
        if not self.factor_words:
            return head
        body = "".join(f"({' '.join(f's{s + 1}' for s in w)})" for w in self.factor_words)
        return f"{head} · {body}"

    def to_json(self) -> dict:
        return {
            "deltaPower": self.delta_power,
            "factors": [[s + 1 for s in w] for w in self.factor_words],
        }


def left_normal_form(ctx: GroupContext, text: str, structure: GarsideStructure | None = None) -> CanonicalForm:
    """Parse a signed word and return its left normal form for the given
    structure (classical when none is given)."""
    structure = structure or GarsideStructure(ctx, 1)
    return structure.canonical_form(parse_word(ctx, text))


def complement(u: GroupElement, structure: GarsideStructure | None = None) -> GroupElement:
    """Right complement for the structure: u^-1 * Delta^N.  Requires u simple."""
    structure = structure or GarsideStructure(u.ctx, 1)
    if not structure.is_simple(u):
        raise NotSimple(f"{u} is not simple for exponent {structure.exponent}")
    return u.inverse() * structure.garside_element()


def longest_element(ctx: GroupContext, X) -> GroupElement:
    """Delta_X: the least common multiple of the generators of X under the
    prefix order; the identity for empty X."""
    return GroupElement.from_simple(ctx, ctx.delta_of(frozenset(X)))


def ribbon(ctx: GroupContext, X, t: int) -> GroupElement:
    """The positive element Delta_X^-1 * Delta_{X + {t}}.

    Trivial when t already lies in X; otherwise it conjugates the generator
    set X into X + {t} and starts with the letter t.
    """
    X = frozenset(X)
    d_x = ctx.delta_of(X)
    d_xt = ctx.delta_of(X | {t})
    return GroupElement.from_simple(ctx, ctx.w_mul(ctx.w_inv(d_x), d_xt))


def simple_times_letter_rewrite(
    alpha: GroupElement, t: int, s: int
) -> GroupElement | None:
    """When t does not divide the classical simple element alpha but divides
    alpha*s, the product alpha*s equals t*alpha; returns that common value,
    or None when the hypotheses fail."""
    ctx = alpha.ctx
    if not alpha.is_simple():
        raise NotSimple(f"{alpha} is not simple for the classical structure")
    wid = alpha.simple_id()
    if t in ctx.w_left_descents(wid):
        return None
    rhs = alpha * GroupElement.generator(ctx, s)
    if t not in ctx.w_left_descents(_first_simple(rhs)):
        return None
    lhs = GroupElement.generator(ctx, t) * alpha
    assert lhs == rhs, "letter-pushing identity must hold for simple elements"
    return rhs
