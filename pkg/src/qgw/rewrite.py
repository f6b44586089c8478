"""Oriented word rewriting, termination-order validation and overlap checking.

Words are compared degree-lexicographically over a total letter order.  A
system whose rules all strictly decrease in that order terminates; if in
addition every overlap ambiguity resolves, normal forms are unique (diamond
lemma) and the irreducible words form a basis of the algebra.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AlphabetMismatch, NonDecreasingRule, NonTerminatingGuard
from .ncpoly import NCPoly, format_word
from .report import CheckReport, timed
from .scalar import Scalar

DEFAULT_MAX_STEPS = 10**6


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple
    rhs: NCPoly

    def __post_init__(self):
        if len(self.lhs) < 2:
            raise NonDecreasingRule(f"rule lhs {format_word(self.lhs)} must have length >= 2")

    def __str__(self):
        return f"{format_word(self.lhs)} -> {self.rhs}"


@dataclass(frozen=True)
class TraceStep:
    word: tuple
    rule: tuple
    position: int

    def __str__(self):
        return f"{format_word(self.word)}  [rule {format_word(self.rule)} at position {self.position + 1}]"


class RewriteSystem:
    """Alphabet with total order plus one rule per lhs word.

    ``alphabet`` lists letters ``(name, slot)`` from smallest to largest.
    """

    def __init__(self, alphabet: Sequence, rules: Iterable[RewriteRule], *,
                 validate: bool = True, max_steps: int = DEFAULT_MAX_STEPS, name: str = ""):
        self.alphabet = tuple(alphabet)
        self.rank = {letter: i for i, letter in enumerate(self.alphabet)}
        if len(self.rank) != len(self.alphabet):
            raise ValueError("duplicate letter in alphabet")
        self.rules: dict[tuple, RewriteRule] = {}
        for rule in rules:
            if rule.lhs in self.rules:
                raise NonDecreasingRule(f"two rules share the lhs {format_word(rule.lhs)}")
            self.rules[rule.lhs] = rule
        self.lengths = sorted({len(lhs) for lhs in self.rules})
        self.max_steps = max_steps
        self.name = name
        self.names = tuple(dict.fromkeys(n for n, _ in self.alphabet))
        if validate:
            bad = self.decreasing_violations()
            if bad:
                rule, word = bad[0]
                raise NonDecreasingRule(
                    f"rule {rule} is not decreasing: {format_word(word)} >= {format_word(rule.lhs)}")

    def word_key(self, word) -> tuple:
        try:
            return (len(word), tuple(self.rank[l] for l in word))
        except KeyError as exc:
            raise AlphabetMismatch(f"letter {exc.args[0]} not in the alphabet of {self.name or 'system'}") from None

    def decreasing_violations(self) -> list:
        out = []
        for rule in self.rules.values():
            top = self.word_key(rule.lhs)
            for word in rule.rhs.terms:
                if self.word_key(word) >= top:
                    out.append((rule, word))
        return out

    def find_redex(self, word, strategy: str = "leftmost"):
        n = len(word)
        positions = range(n) if strategy == "leftmost" else range(n - 1, -1, -1)
        for i in positions:
            for length in self.lengths:
                if i + length > n:
                    break
                factor = word[i:i + length]
                if factor in self.rules:
                    return i, self.rules[factor]
        return None

    def is_normal(self, word) -> bool:
        return self.find_redex(word) is None

    def rewrite_at(self, word, position: int, rule: RewriteRule) -> NCPoly:
        """One rewrite step of a single word."""
        head, tail = word[:position], word[position + len(rule.lhs):]
        return NCPoly._raw({head + w + tail: c for w, c in rule.rhs.terms.items()}, rule.rhs.alphabet)

    def normalize(self, x: NCPoly, strategy: str = "leftmost", trace: list | None = None) -> NCPoly:
        """Rewrite ``x`` to its normal form.

        Words are processed largest-first, so each word is reduced at most
        once per call; within a word the redex is chosen by ``strategy``
        ("leftmost" or "rightmost").
        """
        pending: dict = {}
        heap: list = []
        result: dict = {}

        def push(word, c: Scalar):
            if word in pending:
                total = pending[word] + c
                if total.is_zero():
                    del pending[word]
                else:
                    pending[word] = total
                return
            pending[word] = c
            key = self.word_key(word)
            heapq.heappush(heap, ((-key[0], tuple(-i for i in key[1])), word))

        for word, c in x.terms.items():
            push(word, c)
        steps = 0
        while heap:
            _, word = heapq.heappop(heap)
            c = pending.pop(word, None)
            if c is None:
                continue
            redex = self.find_redex(word, strategy)
            if redex is None:
                result[word] = c
                continue
            steps += 1
            if steps > self.max_steps:
                raise NonTerminatingGuard(f"more than {self.max_steps} rewrite steps in {self.name or 'system'}")
            pos, rule = redex
            if trace is not None:
                trace.append(TraceStep(word, rule.lhs, pos))
            head, tail = word[:pos], word[pos + len(rule.lhs):]
            for w, d in rule.rhs.terms.items():
                push(head + w + tail, c * d)
        alphabet = x.alphabet if x.alphabet is not None else self.names
        return NCPoly._raw(result, alphabet)

    def ambiguities(self):
        """Overlap and inclusion ambiguities: (word, (pos1, rule1), (pos2, rule2))."""
        out = []
        lhss = list(self.rules)
        for l1 in lhss:
            for l2 in lhss:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        out.append((l1 + l2[k:], (0, self.rules[l1]), (len(l1) - k, self.rules[l2])))
                if l1 != l2 and len(l2) < len(l1):
                    for j in range(len(l1) - len(l2) + 1):
                        if l1[j:j + len(l2)] == l2:
                            out.append((l1, (0, self.rules[l1]), (j, self.rules[l2])))
        out.sort(key=lambda amb: self.word_key(amb[0]))
        return out

    def __repr__(self):
        return f"RewriteSystem({self.name!r}, {len(self.alphabet)} letters, {len(self.rules)} rules)"


def normalize(x: NCPoly, sys: RewriteSystem, strategy: str = "leftmost", trace: list | None = None) -> NCPoly:
    return sys.normalize(x, strategy, trace)


def check_termination_order(sys: RewriteSystem) -> CheckReport:
    report = CheckReport("termination", sys.name)
    with timed(report):
        for rule, word in sys.decreasing_violations():
            report.fail(f"rule {format_word(rule.lhs)}",
                        f"rhs word {format_word(word)} is not smaller than {format_word(rule.lhs)}")
        report.derived["rules"] = len(sys.rules)
    return report


def check_local_confluence(sys: RewriteSystem) -> CheckReport:
    report = CheckReport("confluence", sys.name)
    with timed(report):
        ambiguities = sys.ambiguities()
        for word, (p1, r1), (p2, r2) in ambiguities:
            left = sys.normalize(sys.rewrite_at(word, p1, r1))
            right = sys.normalize(sys.rewrite_at(word, p2, r2))
            diff = left - right
            if not diff.is_zero():
                report.fail(f"overlap {format_word(word)}",
                            f"{format_word(r1.lhs)}-first gives {left}; "
                            f"{format_word(r2.lhs)}-first gives {right}")
        report.derived["ambiguities"] = len(ambiguities)
    return report


def random_words(sys: RewriteSystem, samples: int, max_degree: int = 4, seed: int = 0, slot: int | None = None):
    rng = random.Random(seed)
    letters = [l for l in sys.alphabet if slot is None or l[1] == slot]
    return [tuple(rng.choice(letters) for _ in range(rng.randint(0, max_degree))) for _ in range(samples)]


def check_normal_forms(sys: RewriteSystem, samples: int = 1000, max_degree: int = 4, seed: int = 0) -> CheckReport:
    """Idempotence and strategy independence of normalize on random words."""
    report = CheckReport("normal-forms", sys.name)
    with timed(report):
        for word in random_words(sys, samples, max_degree, seed):
            x = NCPoly.word(word, 1, sys.names)
            left = sys.normalize(x, "leftmost")
            right = sys.normalize(x, "rightmost")
            if left != right:
                report.fail(f"word {format_word(word)}", f"leftmost {left}; rightmost {right}")
            again = sys.normalize(left)
            if again != left:
                report.fail(f"word {format_word(word)} (idempotence)", again - left)
        report.derived.update({"samples": samples, "max_degree": max_degree, "seed": seed})
    return report
