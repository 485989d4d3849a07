"""App module for the Streamlit explorer and the command line."""
