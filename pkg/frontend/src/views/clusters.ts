// Cluster curation: member chips, merge/rename/drop, the drop-singletons
// toggle, and a per-cluster per-year chart fed by the trends endpoint.

import type { Cluster, ReviewApi, TrendsResponse } from "../api.js";
import { lineChartSvg, round4, seriesColor } from "../charts.js";
import { toast } from "../toast.js";
import { escapeAttr, escapeHtml } from "./triage.js";

export class ClustersView {
  private clusters: Cluster[] = [];
  private trends: TrendsResponse | null = null;
  private selected = new Set<string>();
  private expanded: string | null = null;
  private hideSingletons = false;

  constructor(
    private api: ReviewApi,
    private projectId: string,
    private root: HTMLElement,
    private onMutation: () => void,
  ) {}

  async load(): Promise<void> {
    const [clusters, trends] = await Promise.all([
      this.api.getClusters(this.projectId),
      this.api.getTrends(this.projectId).catch(() => null),
    ]);
    this.clusters = clusters.clusters;
    this.trends = trends;
    this.selected.clear();
    this.render();
  }

  private async edit(edits: Record<string, unknown>[]): Promise<void> {
    try {
      await this.api.editClusters(this.projectId, edits);
      this.onMutation();
      await this.load();
    } catch (error) {
      toast(String(error));
      await this.load(); // refresh after conflicts
    }
  }

  private chartFor(clusterId: string): string {
    if (!this.trends || !this.trends.year_range) return "";
    const series = this.trends.clusters[clusterId];
    if (!series) return "";
    const [from, to] = this.trends.year_range;
    const years = Array.from({ length: to - from + 1 }, (_, i) => from + i);
    const byYear = new Map(series.years.map((cell) => [cell.year, cell]));
    const lanes = [
      { label: "papers", pick: (y: number) => byYear.get(y)?.papers ?? 0 },
      { label: "relevancy sum", pick: (y: number) => byYear.get(y)?.relevancy_sum ?? 0 },
      { label: "popularity sum", pick: (y: number) => byYear.get(y)?.popularity_sum ?? 0 },
    ].map((lane, i) => ({
      label: lane.label,
      values: years.map(lane.pick),
      color: seriesColor(i),
    }));
    const legend = lanes
      .map((l) => `<span class="legend-item" style="color:${l.color}">■ ${l.label}</span>`)
      .join(" ");
    return `<div class="cluster-chart">${legend}${lineChartSvg(years, lanes)}</div>`;
  }

  private render(): void {
    const visible = this.hideSingletons
      ? this.clusters.filter((c) => !(c.is_noise && c.mentions.length === 1))
      : this.clusters;
    this.root.innerHTML = `
      <div class="controls">
        <button id="cluster-merge" ${this.selected.size < 2 ? "disabled" : ""}>
          merge selected (${this.selected.size})
        </button>
        <label><input type="checkbox" id="cluster-hide-singletons"
               ${this.hideSingletons ? "checked" : ""}>
          hide methods used only once</label>
        <span class="muted">${visible.length} of ${this.clusters.length} clusters</span>
      </div>
      <ul class="clusters">
        ${visible.map((cluster) => this.item(cluster)).join("")}
      </ul>`;

    this.root.querySelector("#cluster-merge")!.addEventListener("click", () => {
      void this.edit([{ op: "merge", ids: [...this.selected] }]);
    });
    this.root
      .querySelector<HTMLInputElement>("#cluster-hide-singletons")!
      .addEventListener("change", (e) => {
        this.hideSingletons = (e.target as HTMLInputElement).checked;
        this.render();
      });
    this.root.querySelectorAll<HTMLInputElement>("input[data-pick]").forEach((box) =>
      box.addEventListener("change", () => {
        if (box.checked) this.selected.add(box.dataset.pick!);
        else this.selected.delete(box.dataset.pick!);
        this.render();
      }),
    );
    this.root.querySelectorAll<HTMLButtonElement>("button[data-rename]").forEach((button) =>
      button.addEventListener("click", () => {
        const current = this.clusters.find((c) => c.id === button.dataset.rename)?.label ?? "";
        const label = window.prompt("new label", current);
        if (label && label !== current)
          void this.edit([{ op: "rename", id: button.dataset.rename, label }]);
      }),
    );
    this.root.querySelectorAll<HTMLButtonElement>("button[data-drop]").forEach((button) =>
      button.addEventListener("click", () => {
        void this.edit([{ op: "drop", id: button.dataset.drop }]);
      }),
    );
    this.root.querySelectorAll<HTMLElement>("[data-expand]").forEach((el) =>
      el.addEventListener("click", () => {
        this.expanded = this.expanded === el.dataset.expand ? null : el.dataset.expand!;
        this.render();
      }),
    );
  }

  private item(cluster: Cluster): string {
    const total = this.trends?.clusters[cluster.id]?.all_time;
    const summary = total
      ? `${total.papers} papers · rel ${total.relevancy_sum} · pop ${round4(total.popularity_sum)}`
      : `${cluster.mentions.length} mentions`;
    const chips = cluster.members
      .map((member) => `<span class="chip">${escapeHtml(member)}</span>`)
      .join("");
    const expanded = this.expanded === cluster.id ? this.chartFor(cluster.id) : "";
    return `
      <li class="cluster ${cluster.is_noise ? "noise" : ""}">
        <div class="cluster-head">
          <input type="checkbox" data-pick="${cluster.id}"
                 ${this.selected.has(cluster.id) ? "checked" : ""}>
          <b data-expand="${cluster.id}" title="toggle chart">${escapeHtml(cluster.label)}</b>
          ${cluster.is_noise ? '<span class="tag">noise</span>' : ""}
          ${cluster.curated ? '<span class="tag curated">curated</span>' : ""}
          <span class="muted">${summary}</span>
          <button class="mini" data-rename="${escapeAttr(cluster.id)}">rename</button>
          <button class="mini" data-drop="${escapeAttr(cluster.id)}">drop</button>
        </div>
        <div class="chips">${chips}</div>
        ${expanded}
      </li>`;
  }
}
