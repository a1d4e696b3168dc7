from langgraph.graph import StateGraph, END
from typing import Any, Dict, Optional
import logging
import os
import time

import numpy as np
import scipy

from mathtools.errors import ConfigError, DomainError, IntegrationError, UnsupportedError
from mathtools.quadrature import QuadratureSettings
from memory.report_writer import ReportWriter, trace_filename
from orchestration.classifier import build_trace
from orchestration.scenarios import execute_scenario, get_scenario, resolve_config
from orchestration.state import ScenarioState, add_error, add_stage_trace, add_warning, create_initial_state
from orchestration.verdict import INCONCLUSIVE, judge_verdict
from utils.logger import ScenarioLogger, log_stage_transition

HARNESS_VERSION = "0.1.0"

EXIT_OK = 0
EXIT_UNEXPECTED_VERDICT = 2
EXIT_IO = 3
EXIT_CONFIG = 4


class ScenarioWorkflow:
    """
    LangGraph pipeline for one scenario:
    validate -> compute_traces -> classify -> judge -> finalize.
    """

    def __init__(self, config: Dict[str, Any]):
        """
        Args:
            config: Application configuration (contents of config.yaml)
        """
        self.config = config
        self.logger = logging.getLogger("workflow")
        logging_config = config.get('logging', {})
        self.stage_loggers = {
            stage: ScenarioLogger(stage, logging_config)
            for stage in ("validate", "compute_traces", "classify", "judge", "finalize")
        }
        self.settings = QuadratureSettings.from_config(config.get('quadrature', {}))
        self.workflow = self._build_workflow()

    def _build_workflow(self):
        workflow = StateGraph(ScenarioState)

        workflow.add_node("validate", self._validate_node)
        workflow.add_node("compute_traces", self._compute_node)
        workflow.add_node("classify", self._classify_node)
        workflow.add_node("judge", self._judge_node)
        workflow.add_node("finalize", self._finalize_node)

        workflow.set_entry_point("validate")

        # A configuration error skips straight to the report
        workflow.add_conditional_edges(
            "validate",
            self._should_continue_after_validate,
            {
                "continue": "compute_traces",
                "end": "finalize"
            }
        )
        workflow.add_edge("compute_traces", "classify")
        workflow.add_edge("classify", "judge")
        workflow.add_edge("judge", "finalize")
        workflow.add_edge("finalize", END)

        return workflow.compile()

    # Nodes

    def _validate_node(self, state: ScenarioState) -> ScenarioState:
        stage = self.stage_loggers["validate"]
        state["current_stage"] = "validate"
        start = time.time()
        stage.log_start(state["run_id"], str(state["raw_config"].get("scenario")))
        try:
            config = resolve_config(
                state["raw_config"],
                harness=self.config.get('harness', {}),
                classifier=self.config.get('classifier', {}),
            )
            state["scenario_config"] = config
            state["config"] = config.model_dump()
            state["expected_verdict"] = get_scenario(config.scenario).expected
            add_stage_trace(state, "validate", "resolved", {"scenario": config.scenario})
            stage.log_end(state["run_id"], f"scenario {config.scenario}", time.time() - start)
        except ConfigError as e:
            stage.log_error(state["run_id"], e)
            add_error(state, f"Configuration error: {e}")
            state["exit_code"] = EXIT_CONFIG
            state["workflow_status"] = "failed"
        return state

    def _compute_node(self, state: ScenarioState) -> ScenarioState:
        stage = self.stage_loggers["compute_traces"]
        state["current_stage"] = "compute_traces"
        log_stage_transition(self.logger, "validate", "compute_traces", state["run_id"])
        start = time.time()
        config = state["scenario_config"]
        stage.log_start(state["run_id"], f"{config.scenario} n={config.n}")
        try:
            run = execute_scenario(config, self.settings)
            state["samples"] = run.samples
            state["failed_traces"] = run.failed
            state["extras"] = run.extras
            for message in run.warnings:
                add_warning(state, message)
                stage.log_warning(state["run_id"], message)
        except (IntegrationError, DomainError, UnsupportedError) as e:
            stage.log_error(state["run_id"], e)
            add_error(state, f"Scenario error: {type(e).__name__}: {e}")
            state["failed_traces"] = state.get("failed_traces", []) + [
                {"name": "scenario", "failed": True, "error": str(e)}
            ]
        stage.log_end(state["run_id"], f"{len(state['samples'])} trace(s)", time.time() - start)
        return state

    def _classify_node(self, state: ScenarioState) -> ScenarioState:
        stage = self.stage_loggers["classify"]
        state["current_stage"] = "classify"
        config = state["scenario_config"]
        classifier_config = self.config.get('classifier', {})
        traces = []
        for sample in state["samples"]:
            trace = build_trace(sample["name"], sample["grid"], sample["values"],
                                classifier_config, tolerance=config.trace_tolerance)
            stage.log_trace(trace.name, int(trace.grid.size), trace.classification.kind)
            if trace.classification.warning:
                add_warning(state, f"{trace.name}: {trace.classification.warning}")
            traces.append(trace)
        state["traces"] = traces
        return state

    def _judge_node(self, state: ScenarioState) -> ScenarioState:
        stage = self.stage_loggers["judge"]
        state["current_stage"] = "judge"
        config = state["scenario_config"]
        verdict, details = judge_verdict(
            state["traces"], state["expected_verdict"], config.verdict_tolerance, state["failed_traces"],
        )
        state["verdict"] = verdict
        state["verdict_details"] = details
        stage.log_decision(config.scenario, verdict, state["expected_verdict"])
        return state

    def _finalize_node(self, state: ScenarioState) -> ScenarioState:
        stage = self.stage_loggers["finalize"]
        state["current_stage"] = "finalize"
        state["end_time"] = time.time()
        state["total_duration"] = state["end_time"] - state["start_time"]

        if state.get("exit_code") == EXIT_CONFIG:
            return state

        config = state["scenario_config"]
        if not state.get("verdict"):
            state["verdict"] = INCONCLUSIVE
        state["report"] = self.build_report(state)

        out_dir = os.path.join(config.output_dir, config.scenario)
        try:
            state["written_files"] = ReportWriter(out_dir).emit(
                state["report"], state["traces"], config.format,
                timing={"scenario": config.scenario, "wall_time_s": state["total_duration"]},
            )
        except OSError as e:
            stage.log_error(state["run_id"], e)
            add_error(state, f"I/O error: {e}")
            state["exit_code"] = EXIT_IO
            state["workflow_status"] = "failed"
            return state

        matched = state["verdict"] == state["expected_verdict"]
        state["exit_code"] = EXIT_OK if matched else EXIT_UNEXPECTED_VERDICT
        state["workflow_status"] = "completed" if not state.get("errors") else "failed"
        stage.log_end(state["run_id"], f"verdict {state['verdict']} (expected {state['expected_verdict']})",
                      state["total_duration"])
        return state

    def _should_continue_after_validate(self, state: ScenarioState) -> str:
        if state.get("exit_code") == EXIT_CONFIG:
            return "end"
        return "continue"

    def build_report(self, state: ScenarioState) -> Dict[str, Any]:
        """JSON report; deterministic for a fixed configuration and library versions."""
        scenario = get_scenario(state["scenario_config"].scenario)
        traces = []
        for index, trace in enumerate(state["traces"]):
            classification = trace.classification
            estimate = classification.limit if classification.kind == "converged" else classification.center
            traces.append({
                "name": trace.name,
                "csv": trace_filename(index, trace.name),
                "points": int(trace.grid.size),
                "grid": [float(trace.grid[0]), float(trace.grid[-1])],
                "window": trace.window,
                "classification": classification.to_dict(),
                "estimate": None if estimate is None else complex(estimate),
                "failed": False,
            })
        return {
            "scenario": scenario.id,
            "theorem": scenario.theorem,
            "config": state["config"],
            "defaults": {
                "harness": self.config.get('harness', {}),
                "classifier": self.config.get('classifier', {}),
                "quadrature": self.config.get('quadrature', {}),
            },
            "traces": traces,
            "failed_traces": state["failed_traces"],
            "extras": state["extras"],
            "verdict": state["verdict"],
            "expected_verdict": state["expected_verdict"],
            "verdict_matches": state["verdict"] == state["expected_verdict"],
            "verdict_details": state["verdict_details"],
            "warnings": state.get("warnings", []),
            "errors": state.get("errors", []),
            "versions": {
                "harness": HARNESS_VERSION,
                "numpy": np.__version__,
                "scipy": scipy.__version__,
            },
        }

    def run(self, state: ScenarioState) -> ScenarioState:
        """
        Run the complete pipeline.

        Args:
            state: Initial state

        Returns:
            Final state

        Raises:
            Any exception a node does not handle, after logging it as critical
        """
        self.logger.info(f"Starting scenario run {state['run_id']}")
        try:
            return self.workflow.invoke(state)
        except Exception as e:
            self.logger.critical(f"Workflow execution failed: {type(e).__name__}: {e}", exc_info=True)
            raise


def run_scenario(raw_config: Dict[str, Any], app_config: Optional[Dict[str, Any]] = None) -> ScenarioState:
    """Validate, execute, judge and emit one scenario; returns the final state."""
    if app_config is None:
        from utils.config_loader import get_config_loader
        app_config = get_config_loader().get_app_config()
    workflow = ScenarioWorkflow(app_config)
    state = create_initial_state(raw_config, app_config.get('harness', {}))
    return workflow.run(state)
