"""Coalgebra and Hopf structure checks.

The coproduct is the matrix coproduct Delta(T_ij) = sum_k T_ik (x) T_kj, with
Delta(f^-1) = f^-1 (x) f^-1.  Tensor powers live in one slot-tagged algebra,
so every statement reduces to normalizing an NCPoly in the 1-, 2- or 3-slot
rewrite system of a presentation.

D^-1 is never adjoined.  The antipode is certified in denominator-cleared
form: M T = T M = D 1 for the 2x2 block M of D S(T), D central, eps(D) = 1,
Delta(D) = D (x) D and f f^-1 = f^-1 f = 1.  In the localization at the central
group-like D these give S(T) = diag(D^-1 M, f^-1) as a two-sided inverse of T,
which is the antipode axiom for a matrix coproduct.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NonHomogeneous
from .linalg import Matrix, rank
from .ncpoly import NCPoly, format_word, map_letters
from .presentations import Presentation, central_candidates, hopf_data
from .report import CheckReport, timed
from .scalar import ONE, ZERO, Scalar

# generator layout of T; None marks a structural zero
LAYOUT3 = (("a", "b", None), ("c", "d", None), (None, None, "f"))
LAYOUT2 = (("a", "b"), ("c", "d"))


def layout_for(p: Presentation) -> tuple:
    return LAYOUT3 if "f" in p.generators else LAYOUT2


def t_matrix(p: Presentation, slot: int = 1, layout=None) -> Matrix:
    """The matrix of generators, e.g. [[a,b,0],[c,d,0],[0,0,f]]."""
    layout = layout or layout_for(p)
    zero = NCPoly.const(0, p.alphabet)
    return Matrix([[zero if g is None else p.gen(g, slot) for g in row] for row in layout])


def _positions(layout) -> dict:
    return {g: (i, j) for i, row in enumerate(layout) for j, g in enumerate(row) if g is not None}


# RTT ---------------------------------------------------------------------------


def rtt_products(T: Matrix) -> tuple[Matrix, Matrix]:
    """(T1 T2)[(i,j),(k,l)] = T_ik T_jl and (T2 T1)[(i,j),(k,l)] = T_jl T_ik, lex indices."""
    d = T.rows
    if T.cols != d:
        raise DimensionMismatch("T must be square")
    n = d * d
    t12 = [[None] * n for _ in range(n)]
    t21 = [[None] * n for _ in range(n)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    t12[i * d + j][k * d + l] = T[i, k] * T[j, l]
                    t21[i * d + j][k * d + l] = T[j, l] * T[i, k]
    return Matrix(t12), Matrix(t21)


def rtt_residual_matrix(R: Matrix, T: Matrix) -> Matrix:
    """R T1 T2 - T2 T1 R, unnormalized (entries in the free algebra)."""
    if R.rows != T.rows**2:
        raise DimensionMismatch(f"R is {R.shape} but T is {T.shape}")
    t12, t21 = rtt_products(T)
    alphabet = next((e.alphabet for row in T.entries for e in row if isinstance(e, NCPoly)), None)
    return (R @ t12 - t21 @ R).map(lambda e: e if isinstance(e, NCPoly) else NCPoly.const(e, alphabet))


def _pair(i: int, d: int) -> str:
    a, b = divmod(i, d)
    return f"{a + 1}{b + 1}"


def rtt_residuals(R: Matrix, T: Matrix, p: Presentation, subject: str | None = None) -> CheckReport:
    """All entries of R T1 T2 - T2 T1 R normalize to zero under ``p``."""
    report = CheckReport("rtt", subject or p.name)
    with timed(report):
        res = rtt_residual_matrix(R, T)
        d = T.rows
        zero_entries = 0
        for i in range(res.rows):
            for j in range(res.cols):
                nf = p.normalize(res[i, j], 1)
                if nf.is_zero():
                    zero_entries += 1
                else:
                    report.fail(f"entry ({_pair(i, d)},{_pair(j, d)})", nf)
        report.derived["zero_entries"] = zero_entries
        report.derived["entries"] = res.rows * res.cols
    return report


def _monic(x: NCPoly, key) -> NCPoly:
    lead = max(x.terms, key=key)
    return x.scale(x.terms[lead].inverse())


def derive_relations(R: Matrix, T: Matrix, p: Presentation | None = None) -> list:
    """Nonzero entries of R T1 T2 - T2 T1 R, merged up to a scalar factor.

    Each relation is returned monic in its leading word (under ``p``'s order
    when given, else the alphabet order of the entries).
    """
    res = rtt_residual_matrix(R, T)
    out = []
    for i in range(res.rows):
        for j in range(res.cols):
            x = res[i, j]
            if x.is_zero():
                continue
            key = p.word_key if p is not None else x.word_key
            m = _monic(x, key)
            if not any(m == y for y in out):
                out.append(m)
    return out


def degree2_words(letters) -> list:
    return [((x, 1), (y, 1)) for x in letters for y in letters]


def relation_matrix(relations, words) -> Matrix:
    index = {w: i for i, w in enumerate(words)}
    rows = []
    for rel in relations:
        row = [ZERO] * len(words)
        for w, c in rel.terms.items():
            if w not in index:
                raise NonHomogeneous(f"relation {rel} has word {format_word(w)} outside the degree-2 word space")
            row[index[w]] = c
        rows.append(row)
    return Matrix(rows) if rows else Matrix.zeros(0, len(words))


def span_equal(x: list, y: list, letters, subject: str = "relations") -> CheckReport:
    """Row spans of two homogeneous degree-2 relation sets coincide."""
    report = CheckReport("span", subject)
    with timed(report):
        for rel in list(x) + list(y):
            if not rel.is_homogeneous(2):
                raise NonHomogeneous(f"relation {rel} is not homogeneous of degree 2")
        words = degree2_words(letters)
        rx = rank(relation_matrix(x, words)) if x else 0
        ry = rank(relation_matrix(y, words)) if y else 0
        rxy = rank(relation_matrix(list(x) + list(y), words)) if x or y else 0
        report.derived.update({"word_space": len(words), "rank_x": rx, "rank_y": ry, "rank_union": rxy})
        if not rx == ry == rxy:
            report.fail("ranks", f"rank(x)={rx}, rank(y)={ry}, rank(x+y)={rxy}")
    return report


# coproduct and counit -------------------------------------------------------------


def coproduct_on_slot(p: Presentation, x: NCPoly, slot: int = 1) -> NCPoly:
    """Apply Delta to the tensor factor ``slot``; later factors shift up by one."""
    layout = layout_for(p)
    pos = _positions(layout)
    n = len(layout)
    inverse_of = {v: k for k, v in p.inverses.items()}

    def image(letter):
        name, s = letter
        if s < slot:
            return NCPoly.gen(name, s, p.alphabet)
        if s > slot:
            return NCPoly.gen(name, s + 1, p.alphabet)
        if name in inverse_of:
            return NCPoly.word([(name, slot), (name, slot + 1)], 1, p.alphabet)
        i, j = pos[name]
        total = NCPoly.const(0, p.alphabet)
        for k in range(n):
            left, right = layout[i][k], layout[k][j]
            if left is not None and right is not None:
                total = total + NCPoly.word([(left, slot), (right, slot + 1)], 1, p.alphabet)
        return total

    return map_letters(x, image, p.alphabet)


def coproduct(p: Presentation, x: NCPoly) -> NCPoly:
    return coproduct_on_slot(p, x, 1)


def counit_on_slot(p: Presentation, x: NCPoly, slot: int = 1) -> NCPoly:
    """Apply eps to the tensor factor ``slot``; later factors shift down by one."""
    pos = _positions(layout_for(p))
    inverse_of = {v: k for k, v in p.inverses.items()}

    def image(letter):
        name, s = letter
        if s < slot:
            return NCPoly.gen(name, s, p.alphabet)
        if s > slot:
            return NCPoly.gen(name, s - 1, p.alphabet)
        if name in inverse_of:
            return NCPoly.const(1, p.alphabet)
        i, j = pos[name]
        return NCPoly.const(1 if i == j else 0, p.alphabet)

    return map_letters(x, image, p.alphabet)


def counit(p: Presentation, x: NCPoly) -> Scalar:
    return counit_on_slot(p, x, 1).constant_part()


def letters_of(p: Presentation) -> list:
    return list(p.letter_order)


def check_bialgebra(p: Presentation) -> CheckReport:
    report = CheckReport("bialgebra", p.name)
    with timed(report):
        rels = p.relation_polys(include_inverse=True)
        for rel in rels:
            where = f"relation {rel} = 0"
            img = p.normalize(coproduct(p, rel), 2)
            if not img.is_zero():
                report.fail(f"Delta of {where}", img)
            eps = counit(p, rel)
            if not eps.is_zero():
                report.fail(f"eps of {where}", eps)
        for g in letters_of(p):
            x = p.gen(g)
            dx = coproduct(p, x)
            left = p.normalize(coproduct_on_slot(p, dx, 1), 3)
            right = p.normalize(coproduct_on_slot(p, dx, 2), 3)
            if left != right:
                report.fail(f"coassociativity on {g}", left - right)
            for slot, label in ((1, "(eps x id)"), (2, "(id x eps)")):
                back = p.normalize(counit_on_slot(p, dx, slot), 1)
                if back != x:
                    report.fail(f"counit {label} Delta({g})", back - x)
        report.derived["relations"] = len(rels)
        report.derived["generators"] = len(p.letter_order)
    return report


# antipode, centrality, group-likes ------------------------------------------------------


def adjugate_matrix(p: Presentation, entries=None) -> Matrix:
    rows = entries if entries is not None else hopf_data(p)["adjugate"]
    return Matrix([[p.element(e) for e in row] for row in rows])


def determinant(p: Presentation) -> NCPoly:
    data = hopf_data(p)
    return central_candidates(p)[data.get("determinant", "D")]


def commutator(x: NCPoly, y: NCPoly) -> NCPoly:
    return x * y - y * x


def _check_centrality(p: Presentation, name: str, z: NCPoly, report: CheckReport) -> None:
    for g in p.generators:
        nf = p.normalize(commutator(z, p.gen(g)), 1)
        if not nf.is_zero():
            report.fail(f"[{name}, {g}]", nf)


def check_antipode(p: Presentation, adjugate=None) -> CheckReport:
    """Adjugate identities, centrality and group-likeness of D, and f f^-1 = 1.

    ``adjugate`` optionally replaces the shipped 2x2 block (rows of expressions).
    """
    report = CheckReport("antipode", p.name)
    with timed(report):
        D = determinant(p)
        M = adjugate_matrix(p, adjugate)
        T2 = t_matrix(p, layout=LAYOUT2)
        DI = Matrix([[D, NCPoly.const(0, p.alphabet)], [NCPoly.const(0, p.alphabet), D]])
        for label, prod in (("M*T", M @ T2), ("T*M", T2 @ M)):
            for i in range(2):
                for j in range(2):
                    nf = p.normalize(prod[i, j] - DI[i, j], 1)
                    if not nf.is_zero():
                        report.fail(f"({label})[{i + 1},{j + 1}] - (D*1)[{i + 1},{j + 1}]", nf)
        _check_centrality(p, "D", D, report)
        eps = counit(p, D)
        if not eps.is_one():
            report.fail("eps(D) - 1", eps - ONE)
        dd = p.normalize(coproduct(p, D) - D * _shift(D, 2), 2)
        if not dd.is_zero():
            report.fail("Delta(D) - D(x)D", dd)
        for g, ginv in p.inverses.items():
            x, y = p.gen(g), p.gen(ginv)
            for label, prod in ((f"{g}*{ginv} - 1", x * y), (f"{ginv}*{g} - 1", y * x)):
                nf = p.normalize(prod - p.one(), 1)
                if not nf.is_zero():
                    report.fail(label, nf)
        report.derived["D"] = str(D)
        report.derived["localization"] = "S(T) = diag(D^-1 M, f^-1); D central and group-like"
    return report


def _shift(x: NCPoly, slot: int) -> NCPoly:
    return NCPoly._raw({tuple((n, slot) for n, _ in w): c for w, c in x.terms.items()}, x.alphabet)


def check_central(p: Presentation) -> CheckReport:
    """Every shipped central candidate commutes with every generator; all stored forms agree."""
    report = CheckReport("central", p.name)
    with timed(report):
        data = hopf_data(p)
        elements = {name: p.element(text) for name, text in data["central"].items()}
        for name, z in elements.items():
            _check_centrality(p, name, z, report)
        names = list(elements)
        for other in names[1:]:
            nf = p.normalize(elements[names[0]] - elements[other], 1)
            if not nf.is_zero():
                report.fail(f"{names[0]} - {other}", nf)
        report.derived["central"] = {name: str(z) for name, z in elements.items()}
    return report


def proportionality(p: Presentation, x: NCPoly, y: NCPoly, nslots: int = 1):
    """Scalar c with x = c*y modulo the relations, or None."""
    nx, ny = p.normalize(x, nslots), p.normalize(y, nslots)
    if ny.is_zero():
        return ZERO if nx.is_zero() else None
    lead = next(iter(ny.terms))
    c = nx.coeff(lead) / ny.terms[lead]
    return c if (nx - ny.scale(c)).is_zero() else None


def commutation_factors(p: Presentation, z: NCPoly) -> dict:
    """For each generator g, the scalar c with z*g = c*g*z (None when there is none)."""
    return {g: proportionality(p, z * p.gen(g), p.gen(g) * z) for g in p.generators}


def check_grouplike(p: Presentation) -> CheckReport:
    """Shipped group-like elements: Delta(x) = x(x)x, eps(x) = 1; commutation factors recorded."""
    report = CheckReport("grouplike", p.name)
    with timed(report):
        data = hopf_data(p)
        elements = dict(data.get("grouplike", {}))
        elements.setdefault(data.get("determinant", "D"), data["central"][data.get("determinant", "D")])
        factors_out = {}
        for name, text in elements.items():
            x = p.element(text)
            nf = p.normalize(coproduct(p, x) - x * _shift(x, 2), 2)
            if not nf.is_zero():
                report.fail(f"Delta({name}) - {name}(x){name}", nf)
            eps = counit(p, x)
            if not eps.is_one():
                report.fail(f"eps({name}) - 1", eps - ONE)
            factors = commutation_factors(p, x)
            factors_out[name] = {g: (None if c is None else str(c)) for g, c in factors.items()}
            central = all(c is not None and c.is_one() for c in factors.values())
            factors_out[name]["central"] = central
        report.derived["commutation"] = factors_out
    return report
