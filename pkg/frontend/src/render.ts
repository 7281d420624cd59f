// DOM rendering. The ranking table is a pure view of the API response:
// rows keep the response order and each displayed total is the JSON value
// verbatim (JSON.stringify of the received number), never a recomputation.

import type { ObservationsPayload, ProblemsPage, RankResponse } from "./api";
import { shortLabel } from "./state";

export function clearChildren(element: HTMLElement): void {
  while (element.firstChild) element.removeChild(element.firstChild);
}

export function showBanner(element: HTMLElement, message: string): void {
  element.textContent = message;
  element.classList.add("visible");
}

export function clearBanner(element: HTMLElement): void {
  element.textContent = "";
  element.classList.remove("visible");
}

export function renderRanking(
  table: HTMLElement,
  response: RankResponse,
  onSelect: (slug: string) => void,
): void {
  clearChildren(table);
  const header = document.createElement("tr");
  for (const title of ["#", "dataset", "total", "contributions"]) {
    const cell = document.createElement("th");
    cell.textContent = title;
    header.appendChild(cell);
  }
  table.appendChild(header);

  const scale = Math.max(
    1e-12,
    ...response.results.flatMap((row) => row.breakdown.map((c) => Math.abs(c.amount))),
  );
  response.results.forEach((row, index) => {
    const tr = document.createElement("tr");
    tr.className = "ranking-row";
    tr.dataset.slug = row.slug;
    tr.dataset.dataset = row.dataset;

    const rank = document.createElement("td");
    rank.textContent = String(index + 1);
    tr.appendChild(rank);

    const name = document.createElement("td");
    name.className = "dataset-iri";
    name.textContent = row.dataset;
    tr.appendChild(name);

    const total = document.createElement("td");
    total.className = "total";
    total.textContent = JSON.stringify(row.total); // verbatim API value
    tr.appendChild(total);

    const bars = document.createElement("td");
    bars.className = "bars";
    for (const contribution of row.breakdown) {
      const bar = document.createElement("div");
      bar.className = "bar";
      bar.title = `${shortLabel(contribution.node)}: ${JSON.stringify(contribution.amount)}`;
      bar.style.width = `${Math.round((Math.abs(contribution.amount) / scale) * 100)}px`;
      bars.appendChild(bar);
    }
    tr.appendChild(bars);

    tr.addEventListener("click", () => onSelect(row.slug));
    table.appendChild(tr);
  });
}

export function renderObservations(container: HTMLElement, payload: ObservationsPayload): void {
  clearChildren(container);
  const heading = document.createElement("h3");
  heading.textContent = payload.dataset;
  container.appendChild(heading);
  const table = document.createElement("table");
  table.className = "observations";
  for (const row of payload.observations) {
    const tr = document.createElement("tr");
    tr.className = "observation-row";
    const label = document.createElement("td");
    label.textContent = row.label;
    const value = document.createElement("td");
    value.className = "value";
    value.textContent = JSON.stringify(row.value);
    const when = document.createElement("td");
    when.textContent = row.observed_at;
    tr.append(label, value, when);
    table.appendChild(tr);
  }
  container.appendChild(table);
}

export interface ProblemPager {
  page: ProblemsPage;
  onPage: (offset: number) => void;
}

export function renderProblems(container: HTMLElement, pager: ProblemPager): void {
  clearChildren(container);
  const { page, onPage } = pager;
  const heading = document.createElement("h4");
  heading.textContent = `problems ${page.total ? page.offset + 1 : 0}-${Math.min(
    page.offset + page.problems.length,
    page.total,
  )} of ${page.total}`;
  container.appendChild(heading);

  const list = document.createElement("ul");
  list.className = "problems";
  for (const problem of page.problems) {
    const item = document.createElement("li");
    item.className = "problem-row";
    item.textContent = `[${shortLabel(problem.metric)}] ${problem.item}`;
    list.appendChild(item);
  }
  container.appendChild(list);

  const nav = document.createElement("div");
  nav.className = "pager";
  const previous = document.createElement("button");
  previous.textContent = "previous";
  previous.className = "page-previous";
  previous.disabled = page.offset === 0;
  previous.addEventListener("click", () => onPage(Math.max(0, page.offset - page.limit)));
  const next = document.createElement("button");
  next.textContent = "next";
  next.className = "page-next";
  next.disabled = page.offset + page.problems.length >= page.total;
  next.addEventListener("click", () => onPage(page.offset + page.limit));
  nav.append(previous, next);
  container.appendChild(nav);
}
