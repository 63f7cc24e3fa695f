"""The lemma catalog: each claim as hypotheses => conclusions over finite groupoids."""
from functools import lru_cache
from typing import Optional

from models.constraint import Constraint
from models.lemma import CompanionPolicy, LemmaSpec
from utils.constraints import ident, prop
from utils.errors import UnknownLemmaError
from utils.identity import equation
from utils.magma import make_algebra

FINITE_CAVEAT = (
    "checked on finite carriers only, where injective translations are surjective; "
    "cancellation and division hypotheses coincide there"
)

LD = prop("left_division")
RD = prop("right_division")
LC = prop("left_cancellative")
RC = prop("right_cancellative")
CYCLIC = ident(equation("cyclic"))
TARSKI = ident(equation("tarski"))

# abelian group, plus each associativity variant an abelian group satisfies
GROUP: list[Constraint] = [
    prop("abelian_group"),
    prop("commutative"),
    prop("associative"),
    prop("has_two_sided_identity"),
    prop("quasigroup"),
    ident(equation("associative")),
    ident(equation("grassmann")),
    ident(equation("left_commutative")),
    ident(equation("cyclic")),
    ident(equation("left_invertive")),
]

_LEFT_PROJECTION = make_algebra(((0, 0), (1, 1)))

_STRUCTURAL = {"left_division", "right_division", "left_cancellative", "right_cancellative"}


def _lemma(
    id: str,
    paper_label: str,
    hypotheses: list[Constraint],
    conclusions: list[Constraint],
    companion_policy: CompanionPolicy = "none",
    default_order: Optional[int] = None,
    note: Optional[str] = None,
) -> LemmaSpec:
    if default_order is None:
        flags = {c.predicate for c in hypotheses if getattr(c, "predicate", None) in _STRUCTURAL}
        default_order = (3, 4, 5)[min(len(flags), 2)]
    return LemmaSpec(
        id=id,
        paper_label=paper_label,
        hypotheses=hypotheses,
        conclusions=conclusions,
        companion_policy=companion_policy,
        default_order=default_order,
        note=note,
    )


def _existence(id: str, paper_label: str, hypotheses, conclusions, witness, note: str) -> LemmaSpec:
    return LemmaSpec(
        id=id,
        paper_label=paper_label,
        kind="existence",
        hypotheses=hypotheses,
        conclusions=conclusions,
        default_order=3,
        expected_witness=witness,
        note=note,
    )


@lru_cache(maxsize=1)
def _build() -> tuple[LemmaSpec, ...]:
    return (
        # cyclic law x * (y * z) = (z * x) * y
        _lemma("CYCL-RD-ASSOC", "CYCL_5", [RD, CYCLIC], [prop("associative")]),
        _lemma("CYCL-RD-COMM", "CYCL_6", [RD, CYCLIC], [prop("commutative")]),
        _lemma("CYCL-RDRC-LID", "CYCL_11", [RD, RC, CYCLIC], [ident("z = (x / x) * z")], "derive_right"),
        _lemma("CYCL-RDRC-UNIQ", "CYCL_12", [RD, RC, CYCLIC], [ident("x / x = y / y")], "derive_right"),
        _lemma("CYCL-RDRC-GROUP", "CYCL_13", [RD, RC, CYCLIC], GROUP),
        _lemma("CYCL-RDLC-QID", "LOOP_1", [RD, LC, CYCLIC], [ident("y / y = x \\ x")], "derive_both"),
        _lemma("CYCL-RDLC-ID", "LOOP_11", [RD, LC, CYCLIC], [prop("has_two_sided_identity")]),
        _lemma("CYCL-RDLC-GROUP", "L_1", [RD, LC, CYCLIC], GROUP),
        _lemma("CYCL-LD-ASSOC", "CYCL_1", [LD, CYCLIC], [prop("associative")]),
        _lemma("CYCL-LD-COMM", "CYCL_2", [LD, CYCLIC], [prop("commutative")]),
        _lemma("CYCL-LDLC-LID", "CYCL_3", [LD, LC, CYCLIC], [ident("x = (y \\ y) * x")], "derive_left"),
        _lemma("CYCL-LDLC-UNIQ", "CYCL_2233", [LD, LC, CYCLIC], [ident("x \\ x = y \\ y")], "derive_left"),
        _lemma("CYCL-LDLC-GROUP", "CYCL_7", [LD, LC, CYCLIC], GROUP),
        _lemma("CYCL-LDRC-GROUP", "CYCL_77", [LD, RC, CYCLIC], GROUP),
        # Tarski law x * (z * y) = (x * y) * z
        _lemma("TARKI-LD-COMM", "TARKI_1", [LD, TARSKI], [prop("commutative")]),
        _lemma("TARKI-LD-ASSOC", "TARKI_2", [LD, TARSKI], [prop("associative")]),
        _lemma(
            "TARKI-LDLC-ID", "TARKI_6", [LD, LC, TARSKI],
            [ident("x = x * (y \\ y)"), ident("x = (y \\ y) * x")], "derive_left",
        ),
        _lemma("TARKI-LDLC-UNIQ", "TARKI_7", [LD, LC, TARSKI], [ident("x \\ x = y \\ y")], "derive_left"),
        _lemma("TARKI-LDLC-GROUP", "TARKI_THEOR_1", [LD, LC, TARSKI], GROUP),
        _lemma("TARKI-LDRC-MIRROR", "TARKI_8", [LD, RC, TARSKI], [ident("x \\ y = y / x")], "derive_both"),
        _lemma("TARKI-LDRC-LID", "TARKI_9", [LD, RC, TARSKI], [ident("y = (x / x) * y")], "derive_right"),
        _lemma(
            "TARKI-LDRC-UNIQ", "TARKI_10", [LD, RC, TARSKI], [ident("x / x = y / y")], "derive_right",
            note="lemma header reads left division with left cancellation; this is the right-cancellation reading",
        ),
        _lemma(
            "TARKI-LDLC-UNIQ-SLASH", "TARKI_10", [LD, LC, TARSKI], [ident("x / x = y / y")], "derive_right",
            note="header reading: left division with left cancellation, conclusion on '/'",
        ),
        _lemma("TARKI-LDRC-GROUP", "TARKI_THEOR_2", [LD, RC, TARSKI], GROUP),
        _lemma("TARKI-RDRC-RID", "TARKI_5", [RD, RC, TARSKI], [ident("x * (y / y) = x")], "derive_right"),
        _lemma("TARKI-RDRC-ASSOC", "TARKI_51", [RD, RC, TARSKI], [prop("associative")]),
        _lemma(
            "TARKI-LC-ASSOC", "TARKI_88", [LC, TARSKI], [prop("associative")],
            note="stated without a division hypothesis; on finite carriers left cancellation already gives left division",
        ),
        _lemma("TARKI-LC-COMM", "TARKI_888", [LC, TARSKI], [prop("commutative")]),
        _lemma("TARKI-LCRD-LID", "TARKI_8811", [LC, RD, TARSKI], [ident("(x / x) * y = y")], "derive_right"),
        _lemma("TARKI-LCRD-UNIQ", "TARKI_882", [LC, RD, TARSKI], [ident("x / x = y / y")], "derive_right"),
        _lemma("TARKI-RDLC-GROUP", "TARKI_THEOR_9", [RD, LC, TARSKI], GROUP),
        # companion identities
        _lemma(
            "Q3", "left cancellation right division", [RD, LC],
            [ident(equation("birkhoff_left"))], "derive_both", default_order=4,
        ),
        _lemma(
            "Q6", "right cancellation left division", [LD, RC],
            [ident(equation("birkhoff_right"))], "derive_both", default_order=4,
        ),
        _lemma(
            "DEF-EQUIV", "definitions equivalent",
            [
                ident(equation("left_division_law")),
                ident(equation("right_division_law")),
                ident(equation("left_cancel_law")),
                ident(equation("right_cancel_law")),
            ],
            [ident(equation("birkhoff_left")), ident(equation("birkhoff_right"))],
            default_order=3,
            note="all three tables are searched together",
        ),
        _lemma(
            "TARKI-COMM-COND", "TAR_EX2", [LD, TARSKI],
            [
                prop("commutative"),
                ident(equation("associative")),
                ident(equation("grassmann")),
                ident(equation("left_commutative")),
                ident(equation("cyclic")),
            ],
            note="every element is x * y for each fixed x (per-row reading of the surjectivity condition)",
        ),
        _existence(
            "TARKI-COMM-IMAGE", "TAR_EX2", [TARSKI, prop("surjective")], [prop("commutative", holds=False)],
            _LEFT_PROJECTION,
            "global-image reading of the surjectivity condition: the left projection is surjective and not commutative",
        ),
        _existence(
            "TARKI-RD-NONCOMM", "TAR_EX1", [RD, TARSKI],
            [prop("commutative", holds=False), prop("has_two_sided_identity", holds=False)],
            _LEFT_PROJECTION,
            "x * y = x on {0, 1}: a right division Tarski groupoid without commutativity or identity",
        ),
    )


def catalog() -> list[LemmaSpec]:
    return list(_build())


def lookup(lemma_id: str) -> LemmaSpec:
    for lemma in _build():
        if lemma.id == lemma_id:
            return lemma
    raise UnknownLemmaError(f"no lemma {lemma_id!r} in the catalog")
