"""Core module for group-ring tensor algebra."""
