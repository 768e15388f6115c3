"""Observation functions (Mealy machines) and indistinguishability relations (two-tape automata)."""

from .automata import (Alphabet, AlphabetMismatchError, AutomatonError, Dfa, InputError, MealyMachine, Nfa,
                       ResourceLimitError, TwoTapeDfa, complement, complete_to_sink, compose, determinize,
                       equivalence_witness, language_equivalent, minimize, pairwise, parallel_product,
                       project_first, project_second, synchronised_product, transpose, trim)
from .formats import ParseError, export_dot, parse, serialize
from .relation import ValidationReport, mealy_to_relation, validate
from .structure import (BranchingVerdict, ConsistencyError, StateClassification, classify_states,
                        decide_bounded_branching, interchangeable, representation_relation, representatives_dfa)
from .synthesis import (InfeasibleConstraintsError, InvalidRelationError, UnrepresentableError, build_closure,
                        generate_constraints, solve_constraints, successor, synthesize, synthesize_mealy, transform)

__version__ = "0.1.0"
