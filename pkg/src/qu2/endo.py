"""Permutative endomorphisms and their extensions.

A permutation rho of the 2^k words of length k induces the unitary
u = sum_w S_{rho(w)} S_w* and the endomorphism S_i -> u S_i.  Such an
endomorphism extends past the gauge-invariant part exactly when some
unitary Utilde satisfies

    (ext1)  Utilde (u S_2) = u S_1
    (ext2)  Utilde (u S_1) = (u S_2) Utilde

check_extension decides both equations by element arithmetic for any
candidate Utilde; the constructive families (make_u_p, make_u_sigma,
make_inner_phi) build unitaries that pass it for the standard template
menu, and enumerate_extendible sweeps whole permutation groups.
"""

from __future__ import annotations

import itertools
from multiprocessing import Pool
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .element import (Element, adjoint_el, element_str, eq, flip_flop,
                      is_unitary, mul, normalize, one, parse_element, phi,
                      proj, s, u)
from .errors import CapacityError, DomainError, ParseError
from .monomial import Monomial
from .words import Word, all_words, flip, lex_index, word_by_lex_index

Perm = Tuple[int, ...]  # perm[i] = lex index of the image of the i-th word


def identity_perm(size: int) -> Perm:
    return tuple(range(size))


def perm_from_word_map(k: int, mapping: Dict[Word, Word]) -> Perm:
    words = all_words(k)
    if sorted(mapping) != words or sorted(mapping.values()) != words:
        raise DomainError("word map is not a permutation of the length-k words")
    return tuple(lex_index(mapping[w]) for w in words)


def perm_to_cycles(perm: Perm) -> str:
    """Disjoint-cycle string on 1-based lex indices, e.g. '(1 3 4 2)'."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        cycles.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(cycles) if cycles else "id"


def parse_cycles(size: int, text: str) -> Perm:
    """Inverse of perm_to_cycles; also accepts dense digits like '(1342)'
    when every index is a single digit."""
    text = text.strip()
    perm = list(range(size))
    if text in ("id", "()", ""):
        return tuple(perm)
    pos = 0
    while pos < len(text):
        if text[pos] != "(":
            raise ParseError("expected '('", pos)
        end = text.find(")", pos)
        if end < 0:
            raise ParseError("unbalanced cycle", pos)
        body = text[pos + 1:end].replace(",", " ")
        if " " in body.strip():
            idx = [int(t) for t in body.split()]
        else:
            idx = [int(ch) for ch in body.strip()]
        if len(idx) < 2 or len(set(idx)) != len(idx) \
                or any(i < 1 or i > size for i in idx):
            raise ParseError(f"bad cycle {text[pos:end+1]!r}", pos)
        for a, b in zip(idx, idx[1:] + idx[:1]):
            if perm[a - 1] != a - 1:
                raise ParseError(f"index {a} repeated across cycles", pos)
            perm[a - 1] = b - 1
        pos = end + 1
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return tuple(perm)


class PermUnitary(NamedTuple):
    level: int
    perm: Perm

    @property
    def element(self) -> Element:
        words = all_words(self.level)
        return Element({Monomial(words[self.perm[i]], 0, words[i]): 1
                        for i in range(len(words))})

    def word_map(self) -> Dict[Word, Word]:
        words = all_words(self.level)
        return {words[i]: words[self.perm[i]] for i in range(len(words))}

    def cycles(self) -> str:
        return perm_to_cycles(self.perm)


def perm_unitary(level: int, perm: Sequence[int]) -> PermUnitary:
    perm = tuple(perm)
    if sorted(perm) != list(range(1 << level)):
        raise DomainError(f"not a permutation of {1 << level} lex indices")
    return PermUnitary(level, perm)


def perm_unitary_from_cycles(level: int, text: str) -> PermUnitary:
    return PermUnitary(level, parse_cycles(1 << level, text))


def perm_unitary_from_element(e: Element, level: Optional[int] = None) -> PermUnitary:
    """Recover (level, permutation) from a unitary in the matrix algebra
    spanned by the S_a S_b* with |a| = |b| = level."""
    if level is None:
        level = max((max(len(m.alpha), len(m.beta)) for m in e.terms), default=0)
    f = normalize(e, level)
    mapping = {}
    for m, c in f.terms.items():
        if c != 1 or m.k != 0 or len(m.alpha) != level or len(m.beta) != level:
            raise DomainError("not a permutation unitary at this level")
        mapping[m.beta] = m.alpha
    return PermUnitary(level, perm_from_word_map(level, mapping))


# extension checking ----------------------------------------------------------

def check_extension_parts(pu: PermUnitary, u_tilde: Element) -> Tuple[bool, bool]:
    """(ext1, ext2) truth values for the candidate image of U."""
    if not is_unitary(u_tilde):
        raise DomainError("candidate image of U must be unitary")
    u_el = pu.element
    s1t = mul(u_el, s((1,)))
    s2t = mul(u_el, s((2,)))
    ext1 = eq(mul(u_tilde, s2t), s1t)
    ext2 = eq(mul(u_tilde, s1t), mul(s2t, u_tilde))
    return ext1, ext2


def check_extension(pu: PermUnitary, u_tilde: Element) -> bool:
    ext1, ext2 = check_extension_parts(pu, u_tilde)
    return ext1 and ext2


class ExtendedEndo(NamedTuple):
    u: PermUnitary
    u_tilde: Element
    verified: bool


def extend(pu: PermUnitary, u_tilde: Element) -> ExtendedEndo:
    return ExtendedEndo(pu, u_tilde, check_extension(pu, u_tilde))


# template menu ---------------------------------------------------------------

def phi_pow_proj(h: int, i: int) -> Element:
    """phi^h(P_i) = sum over length-h words a of P_{a i}."""
    acc = Element()
    for a in all_words(h):
        acc = acc + Element({Monomial(a + (i,), 0, a + (i,)): 1})
    return acc


def mixed_template(k: int, h: int, variant: int) -> Element:
    if not 0 <= h <= k - 2:
        raise DomainError(f"h must lie in 0..{k - 2}")
    if variant not in (1, 2):
        raise DomainError("variant must be 1 or 2")
    n = 1 << (k - 1)
    i, j = (1, 2) if variant == 1 else (2, 1)
    return mul(phi_pow_proj(h, i), u(n)) + mul(phi_pow_proj(h, j), u(-n))


def u_templates_labeled(k: int) -> List[Tuple[str, Element]]:
    """The standard menu of candidate images of U at level k:
    U^{±2^{k-1}}, the mixed projection pairs for each h, and the inner
    images p U p* and p U* p* over the level-(k-1) permutation unitaries."""
    if k < 2:
        raise DomainError("template menu needs level k >= 2")
    n = 1 << (k - 1)
    out: List[Tuple[str, Element]] = [("U+", u(n)), ("U-", u(-n))]
    for h in range(k - 1):
        for variant in (1, 2):
            out.append((f"M{variant}:{h}", mixed_template(k, h, variant)))
    seen = [el for _lbl, el in out]
    for pperm in itertools.permutations(range(1 << (k - 1))):
        p_el = PermUnitary(k - 1, pperm).element
        p_star = adjoint_el(p_el)
        cyc = perm_to_cycles(pperm)
        for tag, tpl in (("AD", mul(mul(p_el, u(1)), p_star)),
                         ("AD*", mul(mul(p_el, u(-1)), p_star))):
            if not any(eq(tpl, old) for old in seen):
                seen.append(tpl)
                out.append((f"{tag}:{cyc}", tpl))
    return out


def u_templates(k: int) -> List[Element]:
    return [el for _lbl, el in u_templates_labeled(k)]


# constructive families --------------------------------------------------------

def make_u_p(p: Sequence[int], sign: int) -> PermUnitary:
    """u_p^+ (sign +1) or u_p^- (sign -1) at level k = |mu| + 1: the
    permutation mu -> p(mu) braided with a final letter, extendible with
    image of U equal to U^{±2^{k-1}}."""
    p = tuple(p)
    size = len(p)
    if size & (size - 1) or size == 0:
        raise DomainError("p must permute the words of some fixed length")
    km1 = size.bit_length() - 1
    if sorted(p) != list(range(size)):
        raise DomainError("p is not a permutation")
    words = all_words(km1)
    mapping: Dict[Word, Word] = {}
    for idx, mu in enumerate(words):
        pmu = words[p[idx]]
        if sign > 0:
            mapping[(1,) + pmu] = mu + (1,)
            mapping[(2,) + pmu] = mu + (2,)
        else:
            mapping[(2,) + pmu] = mu + (1,)
            mapping[(1,) + pmu] = mu + (2,)
    return PermUnitary(km1 + 1, perm_from_word_map(km1 + 1, mapping))


def _apply_mask(mask: Sequence[int], w: Word) -> Word:
    return tuple(flip((letter,))[0] if bit else letter
                 for bit, letter in zip(mask, w))


def make_u_sigma(k: int, h: int, variant: int,
                 side1: Optional[Tuple[Sequence[int], Sequence[int]]] = None,
                 side2: Optional[Tuple[Sequence[int], Sequence[int]]] = None) -> PermUnitary:
    """Extendible unitary for the mixed template of the given variant.

    Each side is (mask, sigma): mask is h bits flipping letters of the
    length-h block on the inner-word side, sigma permutes the length-(k-h-2)
    tail words (as lex indices).  Trivial sides reproduce the plain
    well-suited matching; all (2^h * (2^{k-h-2})!)^2 choices are extendible
    and distinct.
    """
    if k < 2 or not 0 <= h <= k - 2:
        raise DomainError(f"need k >= 2 and 0 <= h <= k-2, got k={k}, h={h}")
    if variant not in (1, 2):
        raise DomainError("variant must be 1 or 2")
    m = k - h - 2
    tail = all_words(m)
    heads = all_words(h)

    def cook(side):
        if side is None:
            return (0,) * h, identity_perm(len(tail))
        mask, sigma = side
        mask = tuple(int(b) for b in mask)
        sigma = tuple(sigma)
        if len(mask) != h or any(b not in (0, 1) for b in mask):
            raise DomainError(f"mask must be {h} bits")
        if sorted(sigma) != list(range(len(tail))):
            raise DomainError("sigma is not a permutation of the tail words")
        return mask, sigma

    mask1, sigma1 = cook(side1)
    mask2, sigma2 = cook(side2)
    # side 1 rides the U^{+2^{k-1}} projection, side 2 the U^{-2^{k-1}} one;
    # the variant decides which letter at position h+1 each side carries.
    # On the + side the 2-prefixed block must land on words ending in 2
    # (so the shift completes them without a leftover U), on the - side
    # on words ending in 1; the 1-prefixed blocks take the flipped endings.
    c1, c2 = (1, 2) if variant == 1 else (2, 1)
    mapping: Dict[Word, Word] = {}
    for a in heads:
        for bi, b in enumerate(tail):
            b1 = tail[sigma1[bi]]
            b2 = tail[sigma2[bi]]
            mapping[(2,) + _apply_mask(mask1, a) + (c1,) + b1] = a + (c1,) + b + (2,)
            mapping[(1,) + _apply_mask(mask1, a) + (c1,) + b1] = a + (c1,) + b + (1,)
            mapping[(2,) + _apply_mask(mask2, a) + (c2,) + b2] = a + (c2,) + b + (1,)
            mapping[(1,) + _apply_mask(mask2, a) + (c2,) + b2] = a + (c2,) + b + (2,)
    return PermUnitary(k, perm_from_word_map(k, mapping))


def enumerate_u_p(k: int, sign: int) -> Iterator[PermUnitary]:
    """All u_p^± at level k in lex order of p."""
    for p in itertools.permutations(range(1 << (k - 1))):
        yield make_u_p(p, sign)


def enumerate_u_sigma(k: int, h: int, variant: int) -> Iterator[PermUnitary]:
    """All mixed-template constructions for (k, h, variant), lex order."""
    m = k - h - 2
    masks = list(itertools.product((0, 1), repeat=h))
    sigmas = list(itertools.permutations(range(1 << m)))
    for mask1 in masks:
        for sigma1 in sigmas:
            for mask2 in masks:
                for sigma2 in sigmas:
                    yield make_u_sigma(k, h, variant,
                                       (mask1, sigma1), (mask2, sigma2))


def make_inner_phi(p: PermUnitary, with_flip: bool) -> ExtendedEndo:
    """The inner-perturbation endomorphism x -> p x p* (composed with the
    flip-flop when asked): u = p phi(p*) (times f), image of U = pUp*
    (resp. pU*p*)."""
    p_el = p.element
    p_star = adjoint_el(p_el)
    u_el = mul(p_el, phi(p_star))
    if with_flip:
        u_el = mul(u_el, flip_flop())
    u_tilde = mul(mul(p_el, u(-1 if with_flip else 1)), p_star)
    pu = perm_unitary_from_element(u_el, p.level + 1)
    return extend(pu, u_tilde)


def lambda_f_el(e: Element) -> Element:
    """The flip-flop endomorphism on sums of monomials: swap the letters
    1 and 2 in every word."""
    return Element({Monomial(flip(m.alpha), m.k, flip(m.beta)): c
                    for m, c in e.terms.items()})


# enumeration ------------------------------------------------------------------

_MAX_BRUTE_LEVEL = 3


def _check_one(args) -> Optional[Perm]:
    level, perm, u_tilde = args
    pu = PermUnitary(level, perm)
    return perm if check_extension(pu, u_tilde) else None


def enumerate_extendible(k: int, template: Element, mode: str = "brute",
                         jobs: int = 1) -> List[PermUnitary]:
    """Every u in the level-k permutation unitaries extendible with the given
    template as image of U.

    brute mode sweeps all (2^k)! permutations (k <= 3); constructive mode
    replays the closed-form family attached to the template and raises a
    domain error for templates with no such family.
    """
    if mode == "constructive":
        return constructive_family(k, template)
    if mode != "brute":
        raise DomainError(f"unknown mode {mode!r}")
    if k > _MAX_BRUTE_LEVEL:
        raise CapacityError(
            f"brute force over {1 << k}! permutations is not tractable; "
            f"level must be <= {_MAX_BRUTE_LEVEL}")
    perms = itertools.permutations(range(1 << k))
    if jobs and jobs > 1:
        with Pool(jobs) as pool:
            hits = pool.imap(_check_one,
                             ((k, perm, template) for perm in perms),
                             chunksize=512)
            found = [perm for perm in hits if perm is not None]
    else:
        found = [perm for perm in perms
                 if check_extension(PermUnitary(k, perm), template)]
    return [PermUnitary(k, perm) for perm in found]


def _template_kind(k: int, template: Element):
    n = 1 << (k - 1)
    if eq(template, u(n)):
        return ("pure", 1)
    if eq(template, u(-n)):
        return ("pure", -1)
    for h in range(k - 1):
        for variant in (1, 2):
            if eq(template, mixed_template(k, h, variant)):
                return ("mixed", h, variant)
    for pperm in itertools.permutations(range(1 << (k - 1))):
        p_el = PermUnitary(k - 1, pperm).element
        p_star = adjoint_el(p_el)
        if eq(template, mul(mul(p_el, u(1)), p_star)):
            return ("inner", pperm, False)
        if eq(template, mul(mul(p_el, u(-1)), p_star)):
            return ("inner", pperm, True)
    return None


def constructive_family(k: int, template: Element) -> List[PermUnitary]:
    kind = _template_kind(k, template)
    if kind is None:
        raise DomainError("no constructive family matches this template")
    if kind[0] == "pure":
        return list(enumerate_u_p(k, kind[1]))
    if kind[0] == "mixed":
        return list(enumerate_u_sigma(k, kind[1], kind[2]))
    _tag, pperm, with_flip = kind
    return [make_inner_phi(PermUnitary(k - 1, pperm), with_flip).u]


# applying an extended endomorphism ---------------------------------------------

def lambda_apply(endo: ExtendedEndo, e: Element) -> Element:
    """Image of an element under the extended endomorphism: S_i -> u S_i,
    U -> the verified template, extended multiplicatively."""
    if not endo.verified:
        raise DomainError("endomorphism is not verified; refusing to apply")
    u_el = endo.u.element
    images = {1: mul(u_el, s((1,))), 2: mul(u_el, s((2,)))}
    ut, ut_star = endo.u_tilde, adjoint_el(endo.u_tilde)
    out = Element()
    for m, c in e.terms.items():
        acc = one()
        for letter in m.alpha:
            acc = mul(acc, images[letter])
        kf = ut if m.k >= 0 else ut_star
        for _ in range(abs(m.k)):
            acc = mul(acc, kf)
        for letter in reversed(m.beta):
            acc = mul(acc, adjoint_el(images[letter]))
        out = out + acc.scale(c)
    return out


# automorphism probe -------------------------------------------------------------

class ProbeResult(NamedTuple):
    stabilized_at: Optional[int]
    witness: Optional[Element]

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None


def automorphism_probe(pu: PermUnitary, depth: int = 6) -> ProbeResult:
    """Look for exact stabilization of w_k = u_k* u* u_k with
    u_k = u phi(u) ... phi^{k-1}(u).

    Stabilization certifies an automorphism with inverse given by the
    witness; no stabilization within the depth budget is reported as
    inconclusive, never as a negative.
    """
    if depth < 2:
        raise DomainError("probe needs depth >= 2")
    u_el = pu.element
    u_star = adjoint_el(u_el)
    u_k = u_el
    prev_w = None
    for k in range(1, depth + 1):
        w_k = mul(mul(adjoint_el(u_k), u_star), u_k)
        if prev_w is not None and eq(prev_w, w_k):
            return ProbeResult(k - 1, prev_w)
        prev_w = w_k
        u_k = mul(u_k, _phi_pow(u_el, k))
    return ProbeResult(None, None)


def _phi_pow(e: Element, j: int) -> Element:
    for _ in range(j):
        e = phi(e)
    return e
