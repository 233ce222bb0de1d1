"""Finitely presented groups: coset enumeration, Reidemeister–Schreier,
δ^p-series invariants, branch constructions of periodic quotients and a
numeric lab for hyperbolic triangle groups."""

from importlib import resources as _resources

__version__ = "0.1.0"

from .words import Alphabet, Word, commutator, cyclic_reduce, free_reduce  # noqa: E402
from .presentation import (  # noqa: E402
    Presentation,
    PresentationSyntaxError,
    format_presentation,
    format_word,
    parse_presentation,
    parse_subgroup,
    parse_word,
)
from .freeprod import SyllableWord, fp_normal_form  # noqa: E402
from .coset import (  # noqa: E402
    CosetTable,
    EnumLimits,
    LimitExceeded,
    coset_action,
    enumerate_cosets,
    index,
    schreier_transversal,
    table_from_homomorphism,
)
from .schreier import (  # noqa: E402
    NotInSubgroup,
    SubgroupPresentation,
    compose_tables,
    rewrite_in_subgroup,
    schreier_rank,
    subgroup_presentation,
    tietze_simplify,
)
from .pseries import (  # noqa: E402
    Ladder,
    Membership,
    PSeriesReport,
    compare_invariants,
    delta_orders,
    free_group_oracle,
    membership_level,
    mod_p_layer_rank,
)
from .omega import (  # noqa: E402
    BranchState,
    ScheduleEntry,
    ScheduleError,
    StepRefused,
    branch_step,
    divergence_check,
    parse_schedule,
    run_omega,
)


def data_path(name: str):
    """Path of a shipped data file (presentations, schedules, the report schema)."""
    return _resources.files(__name__) / "data" / name


def load_presentation(name: str) -> Presentation:
    """Parse one of the shipped presentation files, e.g. ``"G.pres"``."""
    return parse_presentation(data_path(name).read_text(encoding="utf-8"))
