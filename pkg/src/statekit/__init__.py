"""Finite automata, covering and bisimulation checks, and Moore-machine
products for modelling communicating processes."""
from .compose import (IDLE, SUCCESS, Blocked, ConnectionRangeError, Outcome,
                      ProductSpec, experiment, experiment_via_product,
                      experimenter_spec, explore_product, general_product,
                      make_experimenter, passthrough, sync_spec)
from .core import (AlphabetMismatchError, AutomataError,
                   DeterminismRequiredError, LanguageVerdict,
                   MalformedMachineError, MooreMachine, OutputKind,
                   OutputKindMismatchError, Recognizer, TransitionSystem,
                   UnknownStateError, accepts, complete, determinize,
                   isomorphic, language_equivalent, minimize, reachable, trim)
from .encode import enabled_actions, lts_to_moore, observe, recognizer_to_moore
from .equiv import (BisimulationPartition, BisimVerdict, CoverVerdict,
                    SimulationWitness, bisimilar, covering_equivalent, covers,
                    greatest_simulation, quotient)
from .format import MachineDocument, ParseError, parse, serialize, to_dot
from .regex import (Concat, Empty, Epsilon, Lit, Regex, Star, Union,
                    nfa_to_regex, parse_regex, regex_to_nfa)

__version__ = "0.1.0"
