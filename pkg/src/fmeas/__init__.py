"""Exact rational absorption measures on subextension lattices of finite groups."""

from .backend import BACKEND
from .frattini import (
    EmbeddingReport,
    FrattiniReport,
    frattini_subgroup,
    has_embedding_property,
    is_frattini_cover,
    is_frattini_restriction,
)
from .groups import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    GroupHom,
    Subgroup,
    all_subgroups,
    build_group,
    compose,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    epimorphisms,
    generated_subgroup,
    identity_hom,
    image_classes,
    isomorphic,
    quotient,
    semidirect_product,
    symmetric,
)
from .invsys import (
    CompleteSystem,
    SystemEmbedding,
    complete_system,
    dual_embedding,
    dual_group,
    generated_subsystem,
    level_quotient,
    normal_family,
)
from .lattice import (
    GaloisSetup,
    SubextLattice,
    fix_field,
    make_setup,
    maximal_fields,
    s_lattice,
)
from .measure import (
    TUPLE_CAP,
    MeasureVector,
    PushforwardReport,
    TowerSetup,
    TransitionMatrix,
    format_rational,
    measure_event,
    mu1,
    mu_i,
    mu_infinity,
    pushforward_check,
    transition_matrix,
)
from .setupfile import LoadedSetup, SetupFileError, load_setup

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapExceeded",
    "CompleteSystem",
    "EmbeddingReport",
    "FiniteGroup",
    "FrattiniReport",
    "GaloisSetup",
    "GroupError",
    "GroupHom",
    "LoadedSetup",
    "MeasureVector",
    "PushforwardReport",
    "SetupFileError",
    "Subgroup",
    "SubextLattice",
    "SystemEmbedding",
    "TowerSetup",
    "TransitionMatrix",
    "TUPLE_CAP",
    "all_subgroups",
    "build_group",
    "complete_system",
    "compose",
    "cyclic",
    "dicyclic",
    "dihedral",
    "direct_product",
    "dual_embedding",
    "dual_group",
    "epimorphisms",
    "fix_field",
    "format_rational",
    "frattini_subgroup",
    "generated_subgroup",
    "generated_subsystem",
    "has_embedding_property",
    "identity_hom",
    "image_classes",
    "is_frattini_cover",
    "is_frattini_restriction",
    "isomorphic",
    "level_quotient",
    "load_setup",
    "make_setup",
    "maximal_fields",
    "measure_event",
    "mu1",
    "mu_i",
    "mu_infinity",
    "normal_family",
    "pushforward_check",
    "quotient",
    "s_lattice",
    "semidirect_product",
    "symmetric",
    "transition_matrix",
]
