"""Constants for the uakit awareness-model toolkit."""

from typing import Final

DOMAIN: Final = "uakit"

# Limits
HARD_MAX_ATOMS: Final = 16
DEFAULT_MAX_ATOMS: Final = 16
ENV_MAX_ATOMS: Final = "UAKIT_MAX_ATOMS"
MAX_TAUTOLOGY_LETTERS: Final = 16
MAX_WITNESSES: Final = 5

# Defaults
DEFAULT_DEPTH: Final = 3
DEFAULT_POOL_DEPTH: Final = 1
DEFAULT_FAMILY_SIZE: Final = 2
DEFAULT_DIRECT_RETRIES: Final = 25

# Generator caps
GEN_MAX_ATOMS: Final = 3
GEN_MAX_WORLDS: Final = 4
GEN_MAX_AGENTS: Final = 2
GEN_ATOM_NAMES: Final = ("p", "q", "r")

# Countermodel search caps
SEARCH_MAX_WORLDS: Final = 4
SEARCH_MAX_ATOMS: Final = 2

# Formula syntax
TOP_TOKEN: Final = "T"
ATOM_PATTERN: Final = r"[a-z][A-Za-z0-9_]*"

# File kinds
KIND_FH: Final = "fh"
KIND_CATEGORY: Final = "fh-category"
KIND_HMS: Final = "hms"
KIND_PROOF: Final = "proof"
KIND_TRACE: Final = "trace"

# Config keys — shared
CONF_KIND: Final = "kind"
CONF_ATOMS: Final = "atoms"
CONF_AGENTS: Final = "agents"
CONF_NAME: Final = "name"

# Config keys — FH models
CONF_WORLDS: Final = "worlds"
CONF_VALUATION: Final = "valuation"
CONF_RELATIONS: Final = "relations"
CONF_AWARENESS: Final = "awareness"

# Config keys — categories
CONF_BASE: Final = "base"
CONF_MODE: Final = "mode"
CONF_MODELS: Final = "models"
CONF_MORPHISMS: Final = "morphisms"
CONF_ENTRY: Final = "entry"

# Config keys — HMS models
CONF_SPACES: Final = "spaces"
CONF_PROJECTIONS: Final = "projections"
CONF_SPACE: Final = "space"
CONF_EVENT_BASE: Final = "base"
CONF_PI: Final = "pi"
CONF_LAMBDA: Final = "lambda"
CONF_ALPHA: Final = "alpha"

# Config keys — proofs
CONF_LINES: Final = "lines"
CONF_FORMULA: Final = "formula"
CONF_BY: Final = "by"
CONF_SCHEMA: Final = "schema"
CONF_SUBST: Final = "subst"
CONF_MP: Final = "mp"
CONF_KINF: Final = "kinf"
CONF_LINE: Final = "line"
CONF_AGENT: Final = "agent"

# Config keys — transform traces
CONF_SOURCE: Final = "source"
CONF_TARGET: Final = "target"
CONF_TARGET_KIND: Final = "target_kind"
CONF_CORRESPONDENCE: Final = "correspondence"
CONF_STEPS: Final = "steps"
PROJECTION_ARROW: Final = "->"

# HMS model kinds (derived from which correspondences are present)
MODEL_PLAIN: Final = "plain"
MODEL_COMPLEMENTED: Final = "complemented"
MODEL_IKB: Final = "ikb"
MODEL_COMPLEMENTED_IKB: Final = "complemented-ikb"

# Transform targets
TARGET_HMS: Final = "hms"
TARGET_IKB: Final = "ikb"
TARGET_FH: Final = "fh"
TARGET_FH_STAR: Final = "fh-star"
TARGET_CATEGORY: Final = "category"
TARGETS: Final = (TARGET_HMS, TARGET_IKB, TARGET_FH, TARGET_FH_STAR, TARGET_CATEGORY)

# Restriction modes
MODE_COPY: Final = "copy"
MODE_QUOTIENT: Final = "quotient"

# Generator strategies
STRATEGY_VIA_TRANSFORM: Final = "via-transform"
STRATEGY_DIRECT: Final = "direct"

# Validator clauses — FH models
CLAUSE_WORLDS: Final = "worlds_well_formed"
CLAUSE_AGENT_COUNT: Final = "agent_count"
CLAUSE_PARTITION: Final = "partition_coverage"
CLAUSE_AWARENESS_DOMAIN: Final = "awareness_domain"
CLAUSE_KNOW_AWARENESS: Final = "agents_know_what_they_are_aware_of"
CLAUSE_VALUATION_DOMAIN: Final = "valuation_domain"

# Validator clauses — bounded morphisms and categories
CLAUSE_MORPHISM_VOCABULARY: Final = "morphism_vocabulary"
CLAUSE_MORPHISM_TOTAL: Final = "morphism_total"
CLAUSE_SURJECTIVITY: Final = "surjectivity"
CLAUSE_ATOMIC_HARMONY: Final = "atomic_harmony"
CLAUSE_AWARENESS_CONSISTENCY: Final = "awareness_consistency"
CLAUSE_HOMOMORPHISM: Final = "homomorphism"
CLAUSE_BACK: Final = "back"
CLAUSE_CATEGORY_MODELS: Final = "category_models"
CLAUSE_CATEGORY_MORPHISMS: Final = "category_morphisms"
CLAUSE_CATEGORY_DISJOINT: Final = "category_disjoint_worlds"
CLAUSE_IDENTITY: Final = "identity"
CLAUSE_COMMUTATION: Final = "commutation"

# Validator clauses — HMS frames and valuations
CLAUSE_SPACES: Final = "spaces_well_formed"
CLAUSE_DISJOINT: Final = "spaces_disjoint"
CLAUSE_PROJECTION: Final = "projection_well_formed"
CLAUSE_PROJECTION_SURJECTIVE: Final = "projection_surjective"
CLAUSE_PROJECTION_COMMUTES: Final = "projection_commutes"
CLAUSE_VALUATION_EVENT: Final = "valuation_event"
CLAUSE_VALUATION_BASE_SPACE: Final = "valuation_base_space"

# Validator clauses — explicit possibility correspondence
CLAUSE_PI_TOTAL: Final = "pi_total"
CLAUSE_PI_CONFINEMENT: Final = "pi_confinement"
CLAUSE_PI_REFLEXIVITY: Final = "pi_generalized_reflexivity"
CLAUSE_PI_STATIONARITY: Final = "pi_stationarity"
CLAUSE_PI_PPI: Final = "pi_projections_preserve_ignorance"
CLAUSE_PI_PPK: Final = "pi_projections_preserve_knowledge"
CLAUSE_PI_PROJECTION_INVARIANCE: Final = "pi_projection_invariance"

# Validator clauses — implicit possibility correspondence
CLAUSE_LAMBDA_TOTAL: Final = "lambda_total"
CLAUSE_LAMBDA_CONFINEMENT: Final = "lambda_strong_confinement"
CLAUSE_LAMBDA_REFLEXIVITY: Final = "lambda_reflexivity"
CLAUSE_LAMBDA_STATIONARITY: Final = "lambda_stationarity"
CLAUSE_LAMBDA_PPIK: Final = "lambda_projections_preserve_implicit_knowledge"
CLAUSE_LAMBDA_PPII: Final = "lambda_projections_preserve_implicit_ignorance"
CLAUSE_EXPLICIT_MEASURABILITY: Final = "explicit_measurability"
CLAUSE_IMPLICIT_MEASURABILITY: Final = "implicit_measurability"
CLAUSE_COINCIDENCE: Final = "lambda_pi_coincidence"
CLAUSE_COHERENCE: Final = "coherence"

# Validator clauses — awareness functions
CLAUSE_ALPHA_TOTAL: Final = "alpha_total"
CLAUSE_ALPHA_CONCEPTION: Final = "alpha_lack_of_conception"
CLAUSE_ALPHA_MEASURABILITY: Final = "alpha_awareness_measurability"
CLAUSE_ALPHA_BELOW: Final = "alpha_projection_below_awareness"
CLAUSE_ALPHA_ABOVE: Final = "alpha_projection_above_awareness"
CLAUSE_ALPHA_MONOTONE: Final = "alpha_projection_monotone"

# Validator clauses — derivation of the explicit correspondence
CLAUSE_PI_STAR_AUDIT: Final = "pi_star_audit"
CLAUSE_MODEL_KIND: Final = "model_kind"

# Axiom schemas
SCHEMA_K: Final = "K"
SCHEMA_EK: Final = "EK"
SCHEMA_A1: Final = "A1"
SCHEMA_A2: Final = "A2"
SCHEMA_A3: Final = "A3"
SCHEMA_A4: Final = "A4"
SCHEMA_A5: Final = "A5"
SCHEMA_A11: Final = "A11"
SCHEMA_A12: Final = "A12"
SCHEMA_T: Final = "T"
SCHEMA_4: Final = "4"
SCHEMA_5: Final = "5"
SCHEMA_PL: Final = "PL"
SCHEMA_K_DIST: Final = "K-dist"
SUBST_PHI: Final = "phi"
SUBST_PSI: Final = "psi"
SUBST_I: Final = "i"
SUBST_J: Final = "j"

# Property suites
SUITE_ALL: Final = "all"
SUITE_PI: Final = "pi"
SUITE_LAMBDA: Final = "lambda"
SUITE_ALPHA: Final = "alpha"
SUITE_OPERATORS: Final = "operators"
SUITE_EQUIVALENCE: Final = "equivalence"
SUITE_LPA: Final = "lpa"
SUITES: Final = (
    SUITE_PI,
    SUITE_LAMBDA,
    SUITE_ALPHA,
    SUITE_OPERATORS,
    SUITE_EQUIVALENCE,
    SUITE_LPA,
)

# Property names — explicit knowledge
PROP_K_NECESSITATION: Final = "k_necessitation"
PROP_K_CONJUNCTION: Final = "k_conjunction"
PROP_K_TRUTH: Final = "k_truth"
PROP_K_POSITIVE_INTROSPECTION: Final = "k_positive_introspection"
PROP_K_MONOTONICITY: Final = "k_monotonicity"
PROP_K_WEAK_NEGATIVE_INTROSPECTION: Final = "k_weak_negative_introspection"

# Property names — knowledge and unawareness
PROP_KU_INTROSPECTION: Final = "ku_introspection"
PROP_AU_INTROSPECTION: Final = "au_introspection"
PROP_WEAK_NECESSITATION: Final = "weak_necessitation"
PROP_PLAUSIBILITY: Final = "plausibility"
PROP_STRONG_PLAUSIBILITY: Final = "strong_plausibility"
PROP_WEAK_NEGATIVE_INTROSPECTION_II: Final = "weak_negative_introspection_ii"
PROP_SYMMETRY: Final = "symmetry"
PROP_A_CONJUNCTION: Final = "a_conjunction"
PROP_AK_SELF_REFLECTION: Final = "ak_self_reflection"
PROP_AA_SELF_REFLECTION: Final = "aa_self_reflection"
PROP_A_INTROSPECTION: Final = "a_introspection"
PROP_PI_PROJECTION_LEMMA: Final = "pi_projection_lemma"

# Property names — implicit knowledge
PROP_L_NECESSITATION: Final = "l_necessitation"
PROP_L_CONJUNCTION: Final = "l_conjunction"
PROP_L_MONOTONICITY: Final = "l_monotonicity"
PROP_L_TRUTH: Final = "l_truth"
PROP_L_POSITIVE_INTROSPECTION: Final = "l_positive_introspection"
PROP_L_NEGATIVE_INTROSPECTION: Final = "l_negative_introspection"

# Property names — interaction of implicit and explicit knowledge
PROP_K_IS_L_AND_A: Final = "k_is_l_and_a"
PROP_U_IS_LU: Final = "u_is_lu"
PROP_A_IS_LA: Final = "a_is_la"
PROP_AL_IS_A: Final = "al_is_a"

# Property names — derived explicit correspondence
PROP_PI_STAR_DERIVATION: Final = "pi_star_derivation"
PROP_PI_STAR_VALID: Final = "pi_star_valid"
PROP_JOINT_MEASURABILITY: Final = "joint_measurability"
PROP_PI_STAR_AT_STATE: Final = "pi_star_at_state"
PROP_PI_STAR_BELOW_AWARENESS: Final = "pi_star_below_awareness"
PROP_PI_STAR_ABOVE_AWARENESS: Final = "pi_star_above_awareness"
PROP_A_STAR_IS_A: Final = "a_star_is_a"
PROP_K_IS_L_AND_A_STAR: Final = "k_is_l_and_a_star"

# Property names — event algebra and operator outputs
PROP_OPERATORS_ARE_EVENTS: Final = "operators_are_events"
PROP_DOUBLE_NEGATION: Final = "event_double_negation"
PROP_NEGATION_EXTENSION: Final = "event_negation_extension"
PROP_INTERSECTION_EXTENSION: Final = "event_intersection_extension"
PROP_UNION_EXTENSION: Final = "event_union_extension"

# Property names — models, categories and transforms
PROP_MODEL_VALID: Final = "model_valid"
PROP_MODAL_EQUIVALENCE: Final = "modal_equivalence"
PROP_JOIN_EQUIVALENCE: Final = "join_equivalence"
PROP_MEET_EQUIVALENCE: Final = "meet_equivalence"
PROP_FH_TO_HMS: Final = "fh_to_hms_equivalence"
PROP_FH_TO_IKB: Final = "fh_to_ikb_equivalence"
PROP_HMS_TO_FH: Final = "hms_to_fh_equivalence"
PROP_IKB_TO_FH_STAR: Final = "ikb_to_fh_star_equivalence"
PROP_ROUND_TRIP: Final = "fh_round_trip"
PROP_LPA_RULES: Final = "lpa_rules"
