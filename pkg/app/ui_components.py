"""UI components for the Streamlit app."""
import streamlit as st
from typing import List
from core.demo_presets import DemoPreset
from core.models import DiagonalizationReport, SuiteResult
from core.render import diag_frame, suites_frame


def render_suite_results(results: List[SuiteResult]) -> None:
    """
    Render suite outcomes as one table plus a verdict.

    Args:
        results: Suite results in run order
    """
    if not results:
        st.info("No suites ran.")
        return

    failed = [r.suite for r in results if not r.passed]
    if failed:
        st.error(f"Failing suites: {', '.join(failed)}")
    else:
        st.success(f"All {len(results)} suites pass")

    st.dataframe(suites_frame(results), use_container_width=True, hide_index=True)
    for r in results:
        if r.note:
            st.caption(f"{r.suite}: {r.note}")


def render_diag_report(report: DiagonalizationReport) -> None:
    st.metric("Hypothesis residual", f"{report.hypothesis_residual:.3e}")
    if report.passed:
        st.success("T * X^(k) = L_(k,k) o X^(k) holds for every k")
    else:
        st.error(f"Status: {report.status}")
    st.dataframe(diag_frame(report), use_container_width=True, hide_index=True)


def render_demo_presets(presets: List[DemoPreset]) -> None:
    """
    Render demo presets as clickable buttons.

    Args:
        presets: Presets to offer
    """
    st.write("**Try these examples:**")

    for i, preset in enumerate(presets):
        if st.button(preset.name, key=f"demo_{i}", help=preset.description):
            st.session_state.group = preset.group
            st.session_state.ring = preset.ring
            st.session_state.seed = preset.seed
            st.session_state.demo = preset.demo
