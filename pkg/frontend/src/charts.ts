// Dependency-free SVG line charts for the per-year trend series.

export interface Series {
  label: string;
  values: number[];
  color: string;
}

const PALETTE = [
  "#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed",
  "#0891b2", "#be185d", "#4d7c0f", "#b45309", "#475569",
];

export function seriesColor(index: number): string {
  return PALETTE[index % PALETTE.length];
}

export function lineChartSvg(
  years: number[],
  series: Series[],
  width = 640,
  height = 260,
): string {
  const pad = { left: 44, right: 12, top: 12, bottom: 28 };
  const innerW = width - pad.left - pad.right;
  const innerH = height - pad.top - pad.bottom;
  const maxValue = Math.max(1e-9, ...series.flatMap((s) => s.values));
  const x = (i: number) =>
    pad.left + (years.length === 1 ? innerW / 2 : (i / (years.length - 1)) * innerW);
  const y = (v: number) => pad.top + innerH - (v / maxValue) * innerH;

  const gridLines = [0, 0.25, 0.5, 0.75, 1].map((f) => {
    const gy = pad.top + innerH - f * innerH;
    const label = (maxValue * f).toFixed(maxValue >= 10 ? 0 : 1);
    return (
      `<line x1="${pad.left}" y1="${gy}" x2="${width - pad.right}" y2="${gy}" ` +
      `stroke="#e2e8f0" stroke-width="1"/>` +
      `<text x="${pad.left - 6}" y="${gy + 4}" text-anchor="end" class="tick">${label}</text>`
    );
  });

  const xLabels = years.map(
    (year, i) =>
      `<text x="${x(i)}" y="${height - 8}" text-anchor="middle" class="tick">${year}</text>`,
  );

  const paths = series.map((s) => {
    const points = s.values.map((v, i) => `${x(i).toFixed(1)},${y(v).toFixed(1)}`);
    const dots = s.values
      .map(
        (v, i) =>
          `<circle cx="${x(i).toFixed(1)}" cy="${y(v).toFixed(1)}" r="3" fill="${s.color}">` +
          `<title>${s.label} — ${years[i]}: ${round4(v)}</title></circle>`,
      )
      .join("");
    return (
      `<polyline fill="none" stroke="${s.color}" stroke-width="2" points="${points.join(" ")}"/>` +
      dots
    );
  });

  return (
    `<svg viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg" role="img">` +
    gridLines.join("") +
    xLabels.join("") +
    paths.join("") +
    `</svg>`
  );
}

export function round4(value: number): number {
  return Math.round(value * 10000) / 10000;
}
