"""Monitoring and observability components."""
