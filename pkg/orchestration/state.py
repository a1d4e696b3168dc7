from typing import TypedDict, List, Optional, Dict, Any, Literal
from datetime import datetime
import time
import uuid


class ScenarioState(TypedDict, total=False):
    """
    State carried through the scenario pipeline.
    """

    # Unique identifiers
    run_id: str
    timestamp: str

    # Configuration stage
    raw_config: Dict[str, Any]
    config: Dict[str, Any]
    scenario_config: Any
    defaults: Dict[str, Any]

    # Trace stage: raw samples, classified LimitTraces, failed-trace markers
    samples: List[Dict[str, Any]]
    traces: List[Any]
    failed_traces: List[Dict[str, Any]]
    extras: Dict[str, Any]

    # Verdict stage
    verdict: str
    expected_verdict: str
    verdict_details: Dict[str, Any]

    # Output stage
    report: Dict[str, Any]
    written_files: List[str]
    exit_code: int

    # Workflow metadata
    stage_trace: List[Dict[str, Any]]
    current_stage: str
    workflow_status: Literal["in_progress", "completed", "failed"]
    errors: List[str]
    warnings: List[str]

    # Timing information
    start_time: float
    end_time: Optional[float]
    total_duration: Optional[float]


def create_initial_state(raw_config: Dict[str, Any], defaults: Optional[Dict[str, Any]] = None) -> ScenarioState:
    """
    Create an initial state for a scenario run.

    Args:
        raw_config: Scenario configuration as given (CLI or JSON document)
        defaults: Harness defaults from config.yaml

    Returns:
        Initialized ScenarioState
    """
    return ScenarioState(
        run_id=str(uuid.uuid4()),
        timestamp=datetime.now().isoformat(),

        raw_config=dict(raw_config),
        config={},
        scenario_config=None,
        defaults=dict(defaults or {}),

        samples=[],
        traces=[],
        failed_traces=[],
        extras={},

        verdict="",
        expected_verdict="",
        verdict_details={},

        report={},
        written_files=[],
        exit_code=0,

        stage_trace=[],
        current_stage="",
        workflow_status="in_progress",
        errors=[],
        warnings=[],

        start_time=time.time(),
        end_time=None,
        total_duration=None
    )


def add_stage_trace(state: ScenarioState, stage_name: str, action: str, details: Dict[str, Any]):
    """
    Add an entry to the stage trace.

    Args:
        state: Current state
        stage_name: Name of the pipeline stage
        action: Action performed
        details: Additional details
    """
    trace_entry = {
        "timestamp": datetime.now().isoformat(),
        "stage": stage_name,
        "action": action,
        "details": details
    }

    if "stage_trace" not in state:
        state["stage_trace"] = []

    state["stage_trace"].append(trace_entry)


def add_error(state: ScenarioState, error_msg: str):
    """Add an error message to the state."""
    if "errors" not in state:
        state["errors"] = []
    state["errors"].append(error_msg)


def add_warning(state: ScenarioState, warning_msg: str):
    """Add a warning message to the state."""
    if "warnings" not in state:
        state["warnings"] = []
    state["warnings"].append(warning_msg)
