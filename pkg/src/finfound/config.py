from dataclasses import dataclass


@dataclass(frozen=True)
class Bounds:
    """Hard limits for the exponential enumerations."""

    downset_elements: int = 15
    sat_variables: int = 22
    cantor_depth: int = 20
    game_positions: int = 10**7
    strategy_lines: int = 10**6
    bm_alphabet: int = 64


DEFAULT_BOUNDS = Bounds()
