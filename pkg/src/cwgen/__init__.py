"""Arabic educational crossword toolkit.

Pipelines turn texts or answer lists into validated clue-answer pairs via
a pluggable chat-completion gateway; the layout engine places accepted
answers on a grid with a scored stochastic search; renderers, an HTTP
service, and a CLI expose the results.
"""

__version__ = "0.1.0"
