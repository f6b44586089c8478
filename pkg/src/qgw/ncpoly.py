"""Noncommutative polynomials over Q(params) in slot-tagged generators.

A letter is a ``(name, slot)`` pair.  Tensor powers A, A⊗A, A⊗A⊗A are all
modelled as one algebra over a slot-tagged alphabet in which letters from
different slots commute; products are kept slot-sorted (a stable sort, so the
order inside each slot is untouched), which is exactly the normal form for the
cross-slot commutation rules.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import AlphabetMismatch, MissingImage
from .scalar import ONE, Scalar, as_scalar

Letter = tuple  # (name, slot)
Word = tuple  # tuple of letters; () is the unit


def slot_sort(word: Word) -> Word:
    if len(word) < 2:
        return word
    first = word[0][1]
    for _, slot in word:
        if slot != first:
            return tuple(sorted(word, key=lambda letter: letter[1]))
    return word


def _merge_alphabet(a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise AlphabetMismatch(f"operands over different alphabets {a} and {b}")


class NCPoly:
    """Finite sum of words with Scalar coefficients."""

    __slots__ = ("terms", "alphabet")

    def __init__(self, terms: Mapping[Word, object] | None = None, alphabet=None):
        self.terms: dict[Word, Scalar] = {}
        self.alphabet = tuple(alphabet) if alphabet is not None else None
        if terms:
            for word, c in terms.items():
                c = as_scalar(c)
                if c.is_zero():
                    continue
                word = slot_sort(tuple(word))
                if word in self.terms:
                    total = self.terms[word] + c
                    if total.is_zero():
                        del self.terms[word]
                    else:
                        self.terms[word] = total
                else:
                    self.terms[word] = c

    @classmethod
    def _raw(cls, terms: dict, alphabet=None) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.alphabet = alphabet
        return obj

    @classmethod
    def const(cls, c=1, alphabet=None) -> "NCPoly":
        c = as_scalar(c)
        return cls._raw({} if c.is_zero() else {(): c}, alphabet)

    @classmethod
    def gen(cls, name: str, slot: int = 1, alphabet=None) -> "NCPoly":
        return cls._raw({((name, slot),): ONE}, alphabet)

    @classmethod
    def word(cls, letters: Iterable, coeff=1, alphabet=None) -> "NCPoly":
        letters = tuple(l if isinstance(l, tuple) else (l, 1) for l in letters)
        return cls({letters: coeff}, alphabet)

    def with_alphabet(self, alphabet) -> "NCPoly":
        return NCPoly._raw(dict(self.terms), tuple(alphabet) if alphabet is not None else None)

    # queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, word: Word) -> Scalar:
        from .scalar import ZERO

        return self.terms.get(tuple(word), ZERO)

    def letters(self) -> set:
        return {letter for word in self.terms for letter in word}

    def slots(self) -> set[int]:
        return {slot for _, slot in self.letters()}

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if len(degs) > 1:
            return False
        return degree is None or not degs or degs == {degree}

    def constant_part(self) -> Scalar:
        return self.coeff(())

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return NCPoly.const(other, self.alphabet)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        alphabet = _merge_alphabet(self.alphabet, other.alphabet)
        out = dict(self.terms)
        for word, c in other.terms.items():
            if word in out:
                total = out[word] + c
                if total.is_zero():
                    del out[word]
                else:
                    out[word] = total
            else:
                out[word] = c
        return NCPoly._raw(out, alphabet)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()}, self.alphabet)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = as_scalar(c)
        if c.is_zero():
            return NCPoly._raw({}, self.alphabet)
        if c.is_one():
            return self
        return NCPoly._raw({w: v * c for w, v in self.terms.items()}, self.alphabet)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return nc_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a noncommutative polynomial")
        result = NCPoly.const(1, self.alphabet)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[w] for w, c in self.terms.items())

    __hash__ = None

    # display --------------------------------------------------------------

    def letter_key(self, letter: Letter):
        name, slot = letter
        if self.alphabet is not None and name in self.alphabet:
            return (slot, self.alphabet.index(name), name)
        return (slot, len(self.alphabet or ()), name)

    def word_key(self, word: Word):
        return (len(word), tuple(self.letter_key(l) for l in word))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda it: self.word_key(it[0]), reverse=True)

    def __str__(self):
        return format_ncpoly(self)

    def __repr__(self):
        return f"NCPoly({format_ncpoly(self)!r})"


def nc_mul(x: NCPoly, y: NCPoly) -> NCPoly:
    """Bilinear concatenation product with cross-slot commutation."""
    alphabet = _merge_alphabet(x.alphabet, y.alphabet)
    out: dict = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            word = slot_sort(w1 + w2)
            c = c1 * c2
            if word in out:
                total = out[word] + c
                if total.is_zero():
                    del out[word]
                else:
                    out[word] = total
            else:
                out[word] = c
    return NCPoly._raw(out, alphabet)


def embed_slot(x: NCPoly, slot: int) -> NCPoly:
    """Retag every (slot-1) letter of ``x`` into ``slot``."""
    return NCPoly._raw(
        {tuple((name, slot) for name, _ in w): c for w, c in x.terms.items()}, x.alphabet
    )


def map_letters(x: NCPoly, image: Callable[[Letter], NCPoly], alphabet=None) -> NCPoly:
    """Algebra-map extension of ``image`` defined on letters."""
    out = NCPoly.const(0, alphabet)
    cache: dict = {}
    for word, c in x.terms.items():
        term = NCPoly.const(c, alphabet)
        for letter in word:
            if letter not in cache:
                cache[letter] = image(letter)
            term = nc_mul(term, cache[letter])
        out = out + term
    return out


def apply_generator_map(x: NCPoly, images: Mapping) -> NCPoly:
    """Extend generator images (keyed by name or by (name, slot)) to an algebra map."""

    def image(letter):
        if letter in images:
            return images[letter]
        name, slot = letter
        if slot == 1 and name in images:
            return images[name]
        raise MissingImage(f"no image given for generator {name}@{slot}")

    alphabet = None
    for v in images.values():
        if isinstance(v, NCPoly) and v.alphabet is not None:
            alphabet = v.alphabet
            break
    return map_letters(x, image, alphabet)


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return "*".join(name if slot == 1 else f"{name}@{slot}" for name, slot in word)


def _coeff_parts(c: Scalar) -> tuple[str, str]:
    text = str(c)
    simple = "+" not in text[1:] and " - " not in text and "/(" not in text
    if simple:
        if text.startswith("-"):
            return "-", text[1:]
        return "+", text
    return "+", f"({text})"


def format_ncpoly(x: NCPoly) -> str:
    if not x.terms:
        return "0"
    parts = []
    for word, c in x.sorted_terms():
        sign, body = _coeff_parts(c)
        if word:
            w = format_word(word)
            body = w if body == "1" else f"{body}*{w}"
        parts.append((sign, body))
    out = []
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
