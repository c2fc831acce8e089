from ris_css.tools.sim_tools import SimulationOperator, _simulation_operator

__all__ = ["SimulationOperator", "_simulation_operator"]
