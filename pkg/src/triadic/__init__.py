"""Triadic concept analysis: concepts, quasi-features and implication bases."""

from .augmentation import (AugmentedContext, QuasiFeatureReport, TransferCheck, augment,
                           derivation_transfer_check, is_quasi_feature, is_relevant,
                           merged_features, quasi_report, relevant_quasi_features)
from .bases import (CoverageResult, Metrics, build_base, cai_base, complete_base,
                    lemma_minbase_check, metrics, min_cover, minimal_base, pseudo_features)
from .concepts import (ConceptSet, TriadicConcept, brute_force_concepts, enumerate_concepts,
                       features)
from .context import (Axis, Product, TriadicContext, closure_12C, closure_13A, derive_conditional,
                      derive_outer, derive_product, extent, intent, load_context, modus,
                      parse_context)
from .errors import (ContextParseError, ImplicationSyntaxError, KindError, NotEntailedError,
                     SizeGuardError, TriadicError, UnknownNameError)
from .implications import (Implication, ImplicationBase, Kind, is_valid, null_support_closure,
                           parse_implication)
from .logic import (DerivationTrace, TraceStep, closure, eliminate_redundant, entails,
                    equivalent, left_reduce, merge_constraints, replay, right_reduce, trace)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
