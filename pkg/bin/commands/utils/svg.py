"""Static SVG pictures of planar bodies with a trajectory, planks, or an uncovered witness."""

import numpy as np
import svgwrite

from . import convex

MARGIN = 0.1
CANVAS_SIZE = ('600px', '600px')


def _to_point_list(points):
    # the viewBox keeps the mathematical y axis pointing up
    return [(float(x), float(-y)) for x, y in points]


def _viewport(body):
    lo, hi = body.bounding_box()
    span = np.max(hi - lo)
    lo = lo - MARGIN * span
    hi = hi + MARGIN * span
    return lo, hi


def _band(plank, lo, hi):
    frame = np.array([[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]])
    return convex.clip_to_slab(frame, plank.normal, plank.lo, plank.hi)


def draw(path, body, polygon=None, planks=None, witness=None):
    """Write an SVG of a planar body with optional overlays.

    :param str path: destination file
    :param ConvexBody body: the body; its outline is drawn
    :param polygon: closed trajectory points, drawn as a polyline with bounce markers
    :param list planks: planks, drawn as translucent bands
    :param witness: an uncovered point, drawn as a marker
    """

    assert isinstance(body, convex.ConvexBody), "'body' must be a ConvexBody. Given: " + type(body).__name__
    if body.dim != 2:
        raise convex.UnsupportedDimension('SVG output is planar only. Given dimension {0}'.format(body.dim))

    lo, hi = _viewport(body)
    extent = hi - lo
    stroke_width = float(np.max(extent)) / 300
    dot_r = 2 * stroke_width

    dwg = svgwrite.Drawing(path, profile='tiny', size=CANVAS_SIZE)
    dwg.attribs['viewBox'] = '{0} {1} {2} {3}'.format(float(lo[0]), float(-hi[1]), float(extent[0]), float(extent[1]))

    if planks:
        group = dwg.g(id='planks', fill='#3a7bd5', stroke='none', opacity=0.25)
        for plank in planks:
            band = _band(plank, lo, hi)
            if len(band) >= 3:
                group.add(dwg.polygon(points=_to_point_list(band)))
        dwg.add(group)

    dwg.add(
        dwg.polygon(
            points=_to_point_list(body.vertices()),
            stroke='#111',
            fill='none',
            stroke_width=stroke_width,
            opacity=0.9,
        )
    )

    if polygon is not None and len(polygon) >= 2:
        points = np.asarray(polygon, dtype=float)
        closed = np.vstack([points, points[:1]])
        group = dwg.g(id='trajectory', fill='none', stroke='#d11', opacity=0.85)
        group.add(
            dwg.polyline(
                points=_to_point_list(closed),
                stroke_width=stroke_width,
                stroke_linecap='round',
                stroke_linejoin='round',
            )
        )
        dwg.add(group)
        markers = dwg.g(id='bounces', fill='#d11', stroke='none')
        for x, y in points:
            markers.add(dwg.circle(center=(float(x), float(-y)), r=dot_r))
        dwg.add(markers)

    if witness is not None:
        x, y = np.asarray(witness, dtype=float)
        dwg.add(dwg.circle(id='witness', center=(float(x), float(-y)), r=2 * dot_r, fill='#e08000', stroke='none'))

    dwg.save()
