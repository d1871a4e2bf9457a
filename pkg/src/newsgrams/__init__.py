"""Newsfeed n-gram corpus: harvesting, daily frequency tables, diversity metrics, query API."""

__version__ = "0.1.0"
