"""Tube geometry, Frostman measures and the multi-line maximal operator.

The heavy lifting lives in the compiled ``_kakeya`` module; this package
adds a couple of convenience wrappers for JSON-typed arguments.
"""

import json as _json

try:  # installed layout: the extension sits inside the package
    from . import _kakeya as _k
except ImportError:  # build-tree layout: extension on PYTHONPATH
    import _kakeya as _k

__version__ = _k.__version__

CircleMeasure = _k.CircleMeasure
Direction = _k.Direction
GridSpec = _k.GridSpec
MaximalResult = _k.MaximalResult
RasterSet = _k.RasterSet
StepMeasure1D = _k.StepMeasure1D
TubeRectMeasure = _k.TubeRectMeasure

ball_growth_ratio = _k.ball_growth_ratio
cantor_cells = _k.cantor_cells
chord_distance = _k.chord_distance
circle_frostman = _k.circle_frostman
correlation = _k.correlation
direction_sweep = _k.direction_sweep
discretize_frostman = _k.discretize_frostman
frostman_build_1d = _k.frostman_build_1d
growth_ratio = _k.growth_ratio
interval_content = _k.interval_content
lift_to_rectangles = _k.lift_to_rectangles
maximal_value = _k.maximal_value
neighborhood = _k.neighborhood
project = _k.project
projection_interval = _k.projection_interval
pushforward = _k.pushforward
rect_intersection_area = _k.rect_intersection_area
riesz_integral = _k.riesz_integral
tube_of = _k.tube_of


def generate(recipe, grid):
    """Rasterize a set recipe (dict or JSON string) on the given grid."""
    if not isinstance(recipe, str):
        recipe = _json.dumps(recipe)
    return _k.generate(recipe, grid)


def run_experiment(kind, config, out_dir, threads=0):
    """Run one experiment (weaktype/correlation/dichotomy/chain)."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _k.run_experiment(kind, config, out_dir, threads)
