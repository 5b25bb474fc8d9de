// Paper triage: sortable/filterable pool table with one-click curation,
// inline abstracts, bulk actions and the found/excluded/general/remaining
// banner.

import { ApiError, type CurationStatus, type Paper, type ReviewApi } from "../api.js";
import {
  banner,
  defaultFilter,
  filterPapers,
  sortPapers,
  type SortKey,
  type TriageFilter,
} from "../state.js";
import { toast } from "../toast.js";

const STATUSES: { value: CurationStatus; label: string }[] = [
  { value: "included", label: "include" },
  { value: "excluded", label: "exclude" },
  { value: "included_general", label: "general" },
  { value: "unreviewed", label: "reset" },
];

export class TriageView {
  private papers: Paper[] = [];
  private counts: Record<CurationStatus, number> = {
    unreviewed: 0,
    included: 0,
    excluded: 0,
    included_general: 0,
  };
  private sortKey: SortKey = "year";
  private descending = true;
  private filter: TriageFilter = { ...defaultFilter };
  private selected = new Set<string>();

  constructor(
    private api: ReviewApi,
    private projectId: string,
    private root: HTMLElement,
    private onMutation: () => void,
  ) {}

  async load(): Promise<void> {
    const data = await this.api.getPapers(this.projectId);
    this.papers = data.papers;
    this.counts = data.counts;
    this.render();
  }

  private async setStatus(eid: string, status: CurationStatus, note = ""): Promise<void> {
    const paper = this.papers.find((p) => p.eid === eid);
    if (!paper) return;
    const previous = paper.curation;
    paper.curation = status; // optimistic
    this.recount();
    this.render();
    try {
      await this.api.setCuration(this.projectId, eid, status, note);
      this.onMutation();
    } catch (error) {
      paper.curation = previous; // roll back
      this.recount();
      this.render();
      toast(error instanceof ApiError ? `${error.code}: ${error.message}` : String(error));
    }
  }

  private async bulkSet(status: CurationStatus): Promise<void> {
    for (const eid of [...this.selected]) {
      await this.setStatus(eid, status);
    }
    this.selected.clear();
    this.render();
  }

  private recount(): void {
    const counts: Record<CurationStatus, number> = {
      unreviewed: 0,
      included: 0,
      excluded: 0,
      included_general: 0,
    };
    for (const paper of this.papers) counts[paper.curation] += 1;
    this.counts = counts;
  }

  private render(): void {
    const info = banner(this.counts);
    const visible = sortPapers(
      filterPapers(this.papers, this.filter),
      this.sortKey,
      this.descending,
    );
    this.root.innerHTML = `
      <div class="banner">
        <span><b>${info.found}</b> found</span>
        <span><b>${info.excluded}</b> excluded</span>
        <span><b>${info.includedGeneral}</b> general</span>
        <span><b>${info.remaining}</b> remaining</span>
      </div>
      <div class="controls">
        <input id="triage-search" placeholder="filter title / eid" value="${escapeAttr(this.filter.text)}">
        <select id="triage-curation">
          ${["all", "unreviewed", "included", "excluded", "included_general"]
            .map(
              (v) =>
                `<option value="${v}" ${v === this.filter.curation ? "selected" : ""}>${v}</option>`,
            )
            .join("")}
        </select>
        <label>relevancy =
          <input id="triage-rel" type="number" min="0" style="width:4em"
                 value="${this.filter.relevancyEquals ?? ""}">
        </label>
        <span class="bulk">
          bulk (${this.selected.size}):
          ${STATUSES.map(
            (s) => `<button data-bulk="${s.value}">${s.label}</button>`,
          ).join("")}
        </span>
      </div>
      <table class="papers">
        <thead><tr>
          <th></th>
          ${this.header("title", "Title")}
          ${this.header("year", "Year")}
          ${this.header("citation_count", "Cit.")}
          ${this.header("relevancy", "Rel.")}
          ${this.header("popularity", "Pop.")}
          <th>Curation</th>
        </tr></thead>
        <tbody>
          ${visible.map((paper) => this.row(paper)).join("")}
        </tbody>
      </table>`;

    this.root.querySelector<HTMLInputElement>("#triage-search")!.addEventListener("change", (e) => {
      this.filter.text = (e.target as HTMLInputElement).value;
      this.render();
    });
    this.root
      .querySelector<HTMLSelectElement>("#triage-curation")!
      .addEventListener("change", (e) => {
        this.filter.curation = (e.target as HTMLSelectElement).value as TriageFilter["curation"];
        this.render();
      });
    this.root.querySelector<HTMLInputElement>("#triage-rel")!.addEventListener("change", (e) => {
      const raw = (e.target as HTMLInputElement).value;
      this.filter.relevancyEquals = raw === "" ? null : Number(raw);
      this.render();
    });
    this.root.querySelectorAll<HTMLButtonElement>("button[data-bulk]").forEach((button) =>
      button.addEventListener("click", () =>
        this.bulkSet(button.dataset.bulk as CurationStatus),
      ),
    );
    this.root.querySelectorAll<HTMLButtonElement>("button[data-status]").forEach((button) =>
      button.addEventListener("click", () =>
        this.setStatus(button.dataset.eid!, button.dataset.status as CurationStatus),
      ),
    );
    this.root.querySelectorAll<HTMLInputElement>("input[data-select]").forEach((box) =>
      box.addEventListener("change", () => {
        if (box.checked) this.selected.add(box.dataset.select!);
        else this.selected.delete(box.dataset.select!);
      }),
    );
    this.root.querySelectorAll<HTMLElement>("th.sortable").forEach((th) =>
      th.addEventListener("click", () => {
        const key = th.dataset.sort as SortKey;
        if (this.sortKey === key) this.descending = !this.descending;
        else this.sortKey = key;
        this.render();
      }),
    );
  }

  private header(key: SortKey, label: string): string {
    const marker = this.sortKey === key ? (this.descending ? " ▾" : " ▴") : "";
    return `<th class="sortable" data-sort="${key}">${label}${marker}</th>`;
  }

  private row(paper: Paper): string {
    const statusButtons = STATUSES.map(
      (s) =>
        `<button class="mini ${paper.curation === s.value ? "active" : ""}"
                 data-status="${s.value}" data-eid="${escapeAttr(paper.eid)}">${s.label}</button>`,
    ).join("");
    return `
      <tr class="curation-${paper.curation}">
        <td><input type="checkbox" data-select="${escapeAttr(paper.eid)}"
                   ${this.selected.has(paper.eid) ? "checked" : ""}></td>
        <td>
          <details>
            <summary>${escapeHtml(paper.title)}</summary>
            <p class="abstract">${escapeHtml(paper.abstract ?? "(no abstract)")}</p>
            <p class="eid">${escapeHtml(paper.eid)}</p>
          </details>
        </td>
        <td>${paper.year}</td>
        <td>${paper.citation_count}</td>
        <td>${paper.relevancy ?? "–"}</td>
        <td>${paper.popularity ?? "–"}</td>
        <td class="actions">${statusButtons}</td>
      </tr>`;
  }

}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

export function escapeAttr(text: string): string {
  return escapeHtml(text).replace(/"/g, "&quot;");
}
