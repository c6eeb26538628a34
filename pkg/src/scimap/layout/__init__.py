"""Force-directed layout."""
from .fr import LayoutCoords, energy_terms, fruchterman_reingold, layout_energy, optimal_distance

__all__ = ["LayoutCoords", "energy_terms", "fruchterman_reingold", "layout_energy", "optimal_distance"]
