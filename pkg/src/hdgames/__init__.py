"""Simulation, history-determinism, token games and Zielonka-tree
constructions for transition-based parity automata and games."""

from .automata import (ParityAutomaton, UPWord, complete, emit_automaton, is_deterministic,
                       member_up, parity_to_buchi, parse_automaton, validate)
from .constructions import (build_sim_game, build_token_game, check_hd_with_det,
                            check_simulation, solve_token)
from .containment import check_containment, containment_report
from .errors import HDGamesError, ParseError, ResourceLimitError, ValidationError
from .games import (ADAM, EVE, GameArena, MullerGame, ParityGame, Player, PositionalStrategy,
                    TwoDimGame, dualize_priorities, emit_game, parse_game, validate_game)
from .hardness import (DnfFormula, brute_sat, dnf_to_game, emit_dnf, game_to_automata,
                       parse_dnf)
from .solvers import (check_good, solve_2d_enum, solve_2d_muller, solve_parity_brute,
                      solve_parity_recursive, verify_eve_strategy, verify_parity_strategy)
from .zielonka import (MullerCondition, build_zielonka, containment_condition,
                       implication_condition, muller_game_to_parity, token2_condition,
                       tree_to_dpa, zielonka_shape)

__version__ = "0.1.0"
