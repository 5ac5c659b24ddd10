"""Heart-disease prompt classification: data prep, interpretable models,
feature-importance-derived domain knowledge, prompt assembly, a chat-completions
gateway with deterministic mocks, and cost-sensitive evaluation."""

__version__ = "0.1.0"
