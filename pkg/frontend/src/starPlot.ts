/** SVG radar chart: patient polygon over the constant-0.5 arm reference
 * ring, axis labels carrying the native value ranges from the series. All
 * radial values arrive precomputed in [0, 1]; this module only maps them to
 * screen coordinates.
 */

import type { PlotSeries } from "./types";

const SIZE = 360;
const CENTER = SIZE / 2;
const RADIUS = 120;
const SVG_NS = "http://www.w3.org/2000/svg";

function point(index: number, count: number, radial: number): [number, number] {
  const angle = -Math.PI / 2 + (2 * Math.PI * index) / count;
  return [
    CENTER + RADIUS * radial * Math.cos(angle),
    CENTER + RADIUS * radial * Math.sin(angle),
  ];
}

function polygonPoints(values: number[]): string {
  return values
    .map((r, i) => point(i, values.length, r).map((c) => c.toFixed(2)).join(","))
    .join(" ");
}

function fmt(value: number): string {
  return (Math.round(value * 10) / 10).toFixed(1);
}

export function axisAnnotation(
  label: string,
  unit: string,
  lo: number,
  hi: number,
): string {
  return `${label} ${fmt(lo)}-${fmt(hi)} ${unit}`;
}

export function renderStarPlot(series: PlotSeries): SVGSVGElement {
  const n = series.axes.length;
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  svg.setAttribute("class", "star-plot");
  svg.dataset.axes = String(n);

  for (const ring of [0.25, 0.5, 0.75, 1.0]) {
    const grid = document.createElementNS(SVG_NS, "polygon");
    grid.setAttribute("points", polygonPoints(Array(n).fill(ring)));
    grid.setAttribute("class", "grid-ring");
    svg.appendChild(grid);
  }

  series.axes.forEach((axis, i) => {
    const [x, y] = point(i, n, 1.0);
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(CENTER));
    line.setAttribute("y1", String(CENTER));
    line.setAttribute("x2", x.toFixed(2));
    line.setAttribute("y2", y.toFixed(2));
    line.setAttribute("class", "axis-line");
    svg.appendChild(line);

    const [lx, ly] = point(i, n, 1.18);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", lx.toFixed(2));
    text.setAttribute("y", ly.toFixed(2));
    text.setAttribute("text-anchor", "middle");
    text.setAttribute("class", "axis-label");
    text.textContent = axisAnnotation(
      axis.label,
      axis.unit,
      axis.range_lo,
      axis.range_hi,
    );
    svg.appendChild(text);
  });

  const reference = document.createElementNS(SVG_NS, "polygon");
  reference.setAttribute("points", polygonPoints(series.reference));
  reference.setAttribute("class", "reference-polygon");
  reference.dataset.testid = "reference-polygon";
  svg.appendChild(reference);

  const patient = document.createElementNS(SVG_NS, "polygon");
  patient.setAttribute("points", polygonPoints(series.patient));
  patient.setAttribute("class", "patient-polygon");
  patient.dataset.testid = "patient-polygon";
  svg.appendChild(patient);

  return svg;
}
