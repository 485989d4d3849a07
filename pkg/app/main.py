"""Main Streamlit application entry point."""
import sys
from pathlib import Path

# Ensure repo root is on sys.path so `core` imports work
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

import streamlit as st

# IMPORTANT: Must be the first Streamlit command, and called only once
st.set_page_config(
    page_title="Group-Ring Tensor Explorer",
    page_icon="🧮",
    layout="wide"
)

from core.config import RunConfig, load_defaults, make_rng
from core.demo_presets import get_demo_presets
from core.diag import generate_diag_instance, verify_diagonalization
from core.errors import GroupRingError
from core.render import DEMOS, check_demo_size, render_demo
from core.suites import run_suites
from core.transform import require_approximate
from app.ui_components import render_demo_presets, render_diag_report, render_suite_results


def main() -> None:
    st.title("🧮 Group-Ring Tensor Explorer")
    st.write("Tensor products as convolutions over a finite abelian group.")

    if "defaults" not in st.session_state:
        st.session_state.defaults = load_defaults()

    with st.sidebar:
        st.header("Demo Presets")
        render_demo_presets(get_demo_presets())

    col1, col2, col3 = st.columns(3)
    with col1:
        group_spec = st.text_input("Group", value=st.session_state.get("group", "Z3"))
    with col2:
        ring_spec = st.text_input("Ring", value=st.session_state.get("ring", "q"))
    with col3:
        seed = st.number_input("Seed", min_value=0, value=int(st.session_state.get("seed", 0)))

    cfg = RunConfig.from_defaults(
        st.session_state.defaults, group=group_spec, ring=ring_spec, seed=int(seed), samples=50
    )

    tab_demo, tab_verify, tab_diag = st.tabs(["Walkthrough", "Verify", "Diagonalize"])

    with tab_demo:
        demos = list(DEMOS)
        default_demo = st.session_state.get("demo", "products")
        which = st.selectbox("Demo", demos, index=demos.index(default_demo))
        if st.button("Show", type="primary"):
            try:
                group, ring = cfg.validate()
                check_demo_size(group, cfg.demo_max_order)
                st.code(render_demo(which, group, ring, make_rng(cfg.seed)), language=None)
            except GroupRingError as exc:
                st.error(str(exc))

    with tab_verify:
        cfg.samples = st.slider("Samples per identity", 10, 500, 50)
        if st.button("Run suites"):
            try:
                group, ring = cfg.validate()
                with st.spinner("Running property suites..."):
                    results = run_suites(group, ring, cfg)
                render_suite_results(results)
            except GroupRingError as exc:
                st.error(str(exc))

    with tab_diag:
        if st.button("Generate and verify"):
            try:
                group, ring = cfg.validate()
                require_approximate(ring)
                t, x, diagonal = generate_diag_instance(
                    group, ring, cfg.seed, max_draws=cfg.max_draws, condition_limit=cfg.condition_limit
                )
                render_diag_report(verify_diagonalization(t, x, diagonal, cfg.hypothesis_tol, cfg.eigen_tol))
            except GroupRingError as exc:
                st.error(str(exc))


if __name__ == "__main__":
    main()
