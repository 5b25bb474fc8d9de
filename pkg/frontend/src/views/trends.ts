// Trend explorer: stacked all-cluster charts for each metric plus the
// all-time ranking lists, straight from the trends endpoint.

import type { ReviewApi, TrendsResponse } from "../api.js";
import { lineChartSvg, round4, seriesColor } from "../charts.js";
import { escapeHtml } from "./triage.js";

const METRICS = [
  { key: "papers", label: "Papers" },
  { key: "relevancy_sum", label: "Relevancy sum" },
  { key: "popularity_sum", label: "Popularity sum" },
] as const;

export class TrendsView {
  private trends: TrendsResponse | null = null;

  constructor(
    private api: ReviewApi,
    private projectId: string,
    private root: HTMLElement,
  ) {}

  async load(): Promise<void> {
    this.trends = await this.api.getTrends(this.projectId);
    this.render();
  }

  private render(): void {
    const trends = this.trends;
    if (!trends || !trends.year_range) {
      this.root.innerHTML = "<p>No clusters yet; run clustering first.</p>";
      return;
    }
    const [from, to] = trends.year_range;
    const years = Array.from({ length: to - from + 1 }, (_, i) => from + i);
    const entries = Object.entries(trends.clusters);

    const charts = METRICS.map(({ key, label }) => {
      const series = entries.map(([clusterId, cluster], i) => {
        const byYear = new Map(cluster.years.map((cell) => [cell.year, cell]));
        return {
          label: cluster.label,
          color: seriesColor(i),
          values: years.map((year) => {
            const cell = byYear.get(year);
            return cell ? (cell[key] as number) : 0;
          }),
        };
      });
      const legend = series
        .map((s) => `<span class="legend-item" style="color:${s.color}">■ ${escapeHtml(s.label)}</span>`)
        .join(" ");
      return `<section class="trend-chart">
        <h3>${label} per year</h3>
        <div class="legend">${legend}</div>
        ${lineChartSvg(years, series)}
      </section>`;
    }).join("");

    const rankings = Object.entries(trends.rankings)
      .map(
        ([key, rows]) => `
        <div class="ranking">
          <h4>by ${key}</h4>
          <ol>
            ${rows
              .map(
                (row) =>
                  `<li>${escapeHtml(row.label)} <span class="muted">${round4(row.value)}</span></li>`,
              )
              .join("")}
          </ol>
        </div>`,
      )
      .join("");

    const header = ["Cluster", ...years.map(String), "All time"]
      .map((h) => `<th>${h}</th>`)
      .join("");
    const tableRows = entries
      .map(([, cluster]) => {
        const byYear = new Map(cluster.years.map((cell) => [cell.year, cell]));
        const cells = years
          .map((year) => {
            const cell = byYear.get(year);
            return `<td>${cell ? `${cell.papers} / ${cell.relevancy_sum} / ${round4(cell.popularity_sum)}` : "0 / 0 / 0"}</td>`;
          })
          .join("");
        const total = cluster.all_time;
        return `<tr><td>${escapeHtml(cluster.label)}</td>${cells}
          <td><b>${total ? `${total.papers} / ${total.relevancy_sum} / ${round4(total.popularity_sum)}` : ""}</b></td></tr>`;
      })
      .join("");

    this.root.innerHTML = `
      ${charts}
      <section class="rankings">${rankings}</section>
      <section>
        <h3>Papers / relevancy / popularity per year</h3>
        <table class="trend-table">
          <thead><tr>${header}</tr></thead>
          <tbody>${tableRows}</tbody>
        </table>
      </section>`;
  }
}
