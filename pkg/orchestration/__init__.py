"""
Scenario harness orchestrated with LangGraph.
"""

from orchestration.state import ScenarioState, create_initial_state, add_stage_trace
from orchestration.workflow import ScenarioWorkflow, run_scenario
from orchestration.scenarios import get_scenario, list_scenarios

__all__ = [
    'ScenarioState',
    'create_initial_state',
    'add_stage_trace',
    'ScenarioWorkflow',
    'run_scenario',
    'get_scenario',
    'list_scenarios',
]
