"""Agreement degrees, relaxed-monotony principles, and value-based analysis
for abstract argumentation frameworks."""

from .agreement import (AgreementScenario, DegreeKind, ExtensionProfile,
                        SimilarityKind, agreement_delta, agreement_witness,
                        all_degrees, degree_of_agreement, median,
                        pair_satisfaction, resolve_profile, satisfaction,
                        similarity, two_agent_satisfaction)
from .core import (DEFAULT_ENUMERATION_CAP, ArgFramework, SemanticsKind,
                   attacks_set, enumerate_extensions, grounded_fixpoint,
                   is_acceptable, is_admissible, is_conflict_free,
                   strongly_defends)
from .dynamics import (ExtensionWitness, PrincipleKind, PrincipleVerdict,
                       aas_expansion_failure, check_principle, cm_condition,
                       conflict_free_supersets, delta_upper_bound,
                       enforce_principle, is_aas_normal_expansion,
                       is_expansion, is_normal_expansion, is_strong_attacker,
                       max_common_extension_core, min_agreement_lower_bound,
                       srm_condition)
from .errors import (ArgagreeError, DomainError, EnforcementInfeasibleError,
                     GenerationError, ParseError, ResourceLimitError,
                     ValidationError)
from .synth import (ExperimentRecord, GenConfig, derive_seed, format_csv,
                    gen_expansion, gen_initial_vaas, run_delta_experiment,
                    run_impact_experiment, write_csv)
from .values import (ValueFramework, ValueScenario, is_vaas_normal_expansion,
                     is_vaf_expansion, is_vaf_normal_expansion, strip_value,
                     subjective_framework, to_extension_profile,
                     transitive_closure, value_agreement_delta, value_degree,
                     value_impact, value_two_agent_satisfaction)

__version__ = "0.1.0"
