"""Conditional bisimulation checking for reactive systems over input-linear
cospans of finite labelled graphs."""
from .adhesive import (JointlyEpiSquare, SpanResult, jointly_epi_squares, pullback, pushout,
                       pushout_complement, pushout_complements)
from .bisim import (CheckReport, ConditionalRelation, ConditionalTriple, GroundResult,
                    check_cbuc_rep, check_conditional_bisim_rep, check_semi_saturated,
                    derive_condition_candidates, ground_bisim_oracle, in_contextual_closure)
from .borrowed import BCDiagram, borrowed_context_diagrams
from .conditions import (EXISTS, FORALL, Condition, Fails, Holds, Unknown, Verdict, conj, disj,
                         equivalent, false_, implies, negate, normalize, satisfies, shift, true_)
from .contexts import Alphabet
from .cospan import (Cospan, NotInputLinear, compose_cospans, cospan_iso, factorizations,
                     identity_cospan)
from .dsl import DSLError, Document, ParseError, parse, parse_document, parse_file, print_document
from .graph import (Graph, GraphMorphism, compose_morphisms, enumerate_morphisms, is_isomorphic)
from .reactive import (Rule, StepLabel, System, context_steps_bounded, context_steps_for,
                       environment_steps, reactions, reduce_to_representative,
                       representative_steps)

__version__ = "0.1.0"
