"""
teamlib — team-semantics model checking for ML, MINC and ML(∇).

Public API:
    from teamlib.formulas import parse, to_text, modal_depth, occ_nabla, dialect_of
    from teamlib.kripke import KripkeModel, load_model, save_model, enumerate_models
    from teamlib.semantics import evaluate, eval_point, satisfying_teams, max_subteam
    from teamlib.bisimulation import k_bisimilar, team_k_bisimilar, bisim_signature
    from teamlib.characteristic import hintikka, psi, zeta, nedis_char, synthesize
    from teamlib.closure import Domain, ClosureChecker, ClosureProperty
    from teamlib.game import find_strategy, verify_strategy, lower_bound_witness
    from teamlib.config import CheckerConfig, EvalConfig
"""
