"""Algebra presentations: the shipped catalog and a line-oriented DSL.

DSL, one declaration per line, ``#`` starts a comment::

    algebra Grs
    params r s
    gens a < b < c < d < f
    inv f                      # adds the formal inverse letter finv
    rel a*b = r^-1*b*a
    rel [a,d] = (r^-1 - r)*b*c

Each relation is oriented into a rewrite rule by its degree-lexicographically
largest word.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .errors import DSLSyntaxError, NonDecreasingRule, UnknownGenerator, UnknownPresentation
from .expr import parse_ncpoly
from .ncpoly import NCPoly, format_word
from .rewrite import RewriteRule, RewriteSystem

PACKAGE_DATA = Path(__file__).resolve().parent / "data"
CATALOG_FILES = {"grs": "grs.qgw", "gmk": "gmk.qgw", "glr2": "glr2.qgw", "glh2": "glh2.qgw"}


def data_dir() -> Path:
    override = os.environ.get("QGW_DATA_DIR")
    return Path(override) if override else PACKAGE_DATA


def inverse_name(gen: str) -> str:
    return f"{gen}inv"


@dataclass
class Presentation:
    name: str
    params: tuple
    generators: tuple
    letter_order: tuple
    relations: list = field(default_factory=list)  # (lhs, rhs) NCPoly pairs
    inverse_relations: list = field(default_factory=list)
    inverses: dict = field(default_factory=dict)  # generator -> inverse letter
    notes: str = ""

    def __post_init__(self):
        self._systems: dict = {}

    # element construction -------------------------------------------------

    @property
    def alphabet(self) -> tuple:
        return self.letter_order

    def gen(self, name: str, slot: int = 1) -> NCPoly:
        if name not in self.letter_order:
            raise UnknownGenerator(f"{name} is not a generator of {self.name}")
        return NCPoly.gen(name, slot, self.letter_order)

    def one(self) -> NCPoly:
        return NCPoly.const(1, self.letter_order)

    def element(self, text: str) -> NCPoly:
        return parse_ncpoly(text, self.generators, self.params, self.inverses, self.letter_order, strict=True)

    # relations and rewriting -------------------------------------------------

    def relation_polys(self, include_inverse: bool = False) -> list:
        rels = self.relations + (self.inverse_relations if include_inverse else [])
        return [lhs - rhs for lhs, rhs in rels]

    def word_key(self, word) -> tuple:
        rank = {n: i for i, n in enumerate(self.letter_order)}
        return (len(word), tuple(rank[n] for n, _ in word))

    def orient(self, poly: NCPoly) -> RewriteRule:
        if poly.is_zero():
            raise NonDecreasingRule(f"relation of {self.name} is trivial (0 = 0)")
        lead = max(poly.terms, key=self.word_key)
        if len(lead) < 2:
            raise NonDecreasingRule(
                f"relation {poly} = 0 has leading word {format_word(lead)} of length < 2; "
                "it cannot be oriented into a rewrite rule")
        c = poly.terms[lead]
        rest = NCPoly._raw({w: -v / c for w, v in poly.terms.items() if w != lead}, self.letter_order)
        return RewriteRule(lead, rest)

    def rules(self) -> list:
        return [self.orient(p) for p in self.relation_polys(include_inverse=True)]

    def rewrite_system(self, nslots: int = 1) -> RewriteSystem:
        """Rewrite system on ``nslots`` tensor copies of the algebra.

        Letters are ordered slot-major; besides the slot-tagged copies of the
        rules it contains x@j * y@i -> y@i * x@j for every j > i.
        """
        if nslots not in self._systems:
            base = self.rules()
            alphabet = [(n, s) for s in range(1, nslots + 1) for n in self.letter_order]
            rules = []
            for s in range(1, nslots + 1):
                for rule in base:
                    lhs = tuple((n, s) for n, _ in rule.lhs)
                    rhs = NCPoly._raw({tuple((n, s) for n, _ in w): c for w, c in rule.rhs.terms.items()},
                                      self.letter_order)
                    rules.append(RewriteRule(lhs, rhs))
            for j in range(2, nslots + 1):
                for i in range(1, j):
                    for x in self.letter_order:
                        for y in self.letter_order:
                            rules.append(RewriteRule(((x, j), (y, i)), NCPoly.word([(y, i), (x, j)], 1, self.letter_order)))
            label = self.name if nslots == 1 else f"{self.name}^(x{nslots})"
            self._systems[nslots] = RewriteSystem(alphabet, rules, name=label)
        return self._systems[nslots]

    def normalize(self, x: NCPoly, nslots: int | None = None, **kwargs) -> NCPoly:
        if nslots is None:
            nslots = max(x.slots(), default=1)
        return self.rewrite_system(nslots).normalize(x, **kwargs)

    def is_quadratic(self) -> bool:
        return all(p.is_homogeneous(2) for p in self.relation_polys())

    def substitute(self, bindings: dict, name: str | None = None) -> "Presentation":
        """Specialize parameters; bound parameters are dropped from ``params``."""

        def sub(x: NCPoly) -> NCPoly:
            return NCPoly({w: c.substitute(bindings) for w, c in x.terms.items()}, x.alphabet)

        return Presentation(
            name or self.name,
            tuple(p for p in self.params if p not in bindings),
            self.generators, self.letter_order,
            [(sub(l), sub(r)) for l, r in self.relations],
            [(sub(l), sub(r)) for l, r in self.inverse_relations],
            dict(self.inverses), self.notes)

    def rename_params(self, mapping: dict, name: str | None = None) -> "Presentation":
        from .scalar import param

        out = self.substitute({old: param(new) for old, new in mapping.items()}, name)
        out.params = tuple(mapping.get(p, p) for p in self.params)
        return out

    def with_order(self, order) -> "Presentation":
        order = tuple(order)
        if set(order) != set(self.generators):
            raise UnknownGenerator(f"order {order} must list exactly the generators {self.generators}")
        letters = order + tuple(self.inverses[g] for g in order if g in self.inverses)
        return Presentation(self.name, self.params, order, letters,
                            [(l.with_alphabet(letters), r.with_alphabet(letters)) for l, r in self.relations],
                            [(l.with_alphabet(letters), r.with_alphabet(letters)) for l, r in self.inverse_relations],
                            dict(self.inverses), self.notes)

    # comparison / printing ------------------------------------------------------

    def rule_map(self) -> dict:
        return {rule.lhs: rule.rhs for rule in self.rules()}

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        if (self.name, tuple(self.params), self.letter_order, self.inverses) != (
                other.name, tuple(other.params), other.letter_order, other.inverses):
            return False
        mine, theirs = self.rule_map(), other.rule_map()
        return mine.keys() == theirs.keys() and all(mine[k] == theirs[k] for k in mine)

    __hash__ = None

    def to_dsl(self) -> str:
        lines = []
        if self.notes:
            lines += [f"# {line}" if line else "#" for line in self.notes.splitlines()]
        lines.append(f"algebra {self.name}")
        if self.params:
            lines.append("params " + " ".join(self.params))
        lines.append("gens " + " < ".join(self.generators))
        for g in self.generators:
            if g in self.inverses:
                lines.append(f"inv {g}")
        for rule in self.rules():
            lines.append(f"rel {format_word(rule.lhs)} = {rule.rhs}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_dsl()


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*$")


def parse_presentation(text: str) -> Presentation:
    """Parse DSL source into a validated Presentation."""
    name = None
    params: list = []
    gens: list | None = None
    inverses: dict = {}
    rel_lines: list = []
    notes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            if raw.strip().startswith("#") and name is None:
                notes.append(raw.strip()[1:].strip())
            continue
        indent = len(body) - len(body.lstrip())
        keyword, _, rest = body.strip().partition(" ")
        rest_col = indent + len(keyword) + 2
        if keyword == "algebra":
            if not _NAME.match(rest.strip()):
                raise DSLSyntaxError("expected an algebra name", lineno, rest_col, raw)
            name = rest.strip()
        elif keyword == "params":
            for p in rest.split():
                if not _NAME.match(p):
                    raise DSLSyntaxError(f"bad parameter name {p!r}", lineno, rest_col + rest.find(p), raw)
                params.append(p)
        elif keyword == "gens":
            parts = [g.strip() for g in rest.split("<")]
            for g in parts:
                if not _NAME.match(g):
                    raise DSLSyntaxError(f"bad generator name {g!r}", lineno, rest_col + max(rest.find(g), 0), raw)
            if len(set(parts)) != len(parts):
                raise DSLSyntaxError("duplicate generator", lineno, rest_col, raw)
            gens = parts
        elif keyword == "inv":
            g = rest.strip()
            if gens is None:
                raise DSLSyntaxError("inv must follow gens", lineno, indent + 1, raw)
            if g not in gens:
                raise UnknownGenerator(f"inv of undeclared generator {g!r} (line {lineno})")
            inverses[g] = inverse_name(g)
        elif keyword == "rel":
            if gens is None:
                raise DSLSyntaxError("rel must follow gens", lineno, indent + 1, raw)
            lhs_text, eq, rhs_text = rest.partition("=")
            if not eq:
                raise DSLSyntaxError("relation needs '='", lineno, rest_col + len(rest), raw)
            rel_lines.append((lineno, lhs_text, rhs_text, rest_col, rest_col + len(lhs_text) + 1, raw))
        else:
            raise DSLSyntaxError(f"unknown declaration {keyword!r}", lineno, indent + 1, raw)
    if name is None:
        raise DSLSyntaxError("missing 'algebra' declaration", 1, 1)
    if gens is None:
        raise DSLSyntaxError("missing 'gens' declaration", 1, 1)
    letters = tuple(gens) + tuple(inverses[g] for g in gens if g in inverses)
    relations, inverse_relations = [], []
    inverse_letters = set(inverses.values())
    for lineno, lt, rt, lcol, rcol, raw in rel_lines:
        if not lt.strip():
            raise DSLSyntaxError("empty left-hand side", lineno, lcol, raw)
        if not rt.strip():
            raise DSLSyntaxError("empty right-hand side", lineno, rcol, raw)
        lhs = parse_ncpoly(lt, gens, params, inverses, letters, line=lineno, col0=lcol, strict=True)
        rhs = parse_ncpoly(rt, gens, params, inverses, letters, line=lineno, col0=rcol, strict=True)
        for poly in (lhs, rhs):
            if any(slot != 1 for slot in poly.slots()):
                raise DSLSyntaxError("slot tags are not allowed in relations", lineno, lcol, raw)
        used = {n for n, _ in (lhs - rhs).letters()}
        (inverse_relations if used & inverse_letters else relations).append((lhs, rhs))
    pres = Presentation(name, tuple(params), tuple(gens), letters, relations, inverse_relations,
                        inverses, "\n".join(notes))
    pres.rewrite_system()  # orients every relation and validates the order
    return pres


def load_presentation(path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def _catalog_cached(key: str, directory: str) -> Presentation:
    return load_presentation(Path(directory) / CATALOG_FILES[key])


def catalog(name: str) -> Presentation:
    key = name.lower()
    if key not in CATALOG_FILES:
        raise UnknownPresentation(f"unknown presentation {name!r}; known: Grs, Gmk, GLr2, GLh2")
    return _catalog_cached(key, str(data_dir()))


@lru_cache(maxsize=None)
def _hopf_data(directory: str) -> dict:
    return json.loads((Path(directory) / "hopf.json").read_text(encoding="utf-8"))


def hopf_data(p: Presentation) -> dict:
    data = _hopf_data(str(data_dir()))
    if p.name not in data:
        raise UnknownPresentation(f"no Hopf data shipped for {p.name}")
    return data[p.name]


def central_candidates(p: Presentation) -> dict:
    """Distinguished elements of a catalog algebra, keyed by name.

    Grs gives D and delta = D*f; Gmk gives D and the second equivalent form
    D_alt; the 2x2 algebras give their determinant.
    """
    data = hopf_data(p)
    out = {name: p.element(text) for name, text in data["central"].items()}
    for name, text in data.get("grouplike", {}).items():
        out[name] = p.element(text)
    return out


def subalgebra(p: Presentation, generators) -> Presentation:
    """Relations of ``p`` involving only ``generators`` (no inverse letters)."""
    gens = tuple(g for g in p.generators if g in generators)
    keep = [(l, r) for l, r in p.relations if {n for n, _ in (l - r).letters()} <= set(gens)]
    letters = gens
    return Presentation(p.name + "|" + "".join(gens), p.params, gens, letters,
                        [(l.with_alphabet(letters), r.with_alphabet(letters)) for l, r in keep],
                        [], {}, p.notes)

