"""Science-mapping toolkit: bibliographic corpora to co-authorship, coupling
and co-word networks, with macro/meso/micro scores, communities and layouts."""

__version__ = "0.1.0"
