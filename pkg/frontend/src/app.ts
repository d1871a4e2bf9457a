/** DOM shell: builds both pages, binds inputs to the drafts, and renders
 * controller state. All behavior lives in the imported modules; this file
 * only moves values between DOM nodes and controllers.
 */

import { ApiClient, type FetchLike } from "./api";
import { DEFAULT_LAYOUT, renderChartSvg } from "./chart";
import { pngFromSvg, svgDataUrl, triggerDownload } from "./download";
import { getLabels, type Labels } from "./labels";
import {
  BigramFinderController,
  MainPageController,
  MAX_WINDOW,
  MIN_WINDOW,
} from "./state";
import {
  defaultTableState,
  setPage,
  setSearch,
  tableView,
  toggleSort,
  type SortKey,
  type TableState,
} from "./table";
import { decodeState, encodeState, type Tab } from "./url";

export interface AppOptions {
  baseUrl?: string;
  fetchLike?: FetchLike;
  language?: string;
}

export interface App {
  main: MainPageController;
  finder: BigramFinderController;
  setTab(tab: Tab): void;
  currentTab(): Tab;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export function mount(root: HTMLElement, options: AppOptions = {}): App {
  const labels = getLabels(
    options.language ?? (typeof navigator !== "undefined" ? navigator.language : "en"),
  );
  const api = new ApiClient(options.baseUrl ?? "", options.fetchLike);

  const main = new MainPageController(api);
  const finder = new BigramFinderController(api, (hit) => {
    main.prefill(`${hit.form1} ${hit.form2}`, "exact");
    setTab("main");
    syncMainInputs();
    syncUrl();
  });

  let tab: Tab = "main";
  let hitState: TableState = defaultTableState();
  let bigramPage = 0;
  let currentSvg = "";

  // --- static structure ---------------------------------------------------

  root.textContent = "";
  const shell = el("div", { class: "viewer" });
  root.appendChild(shell);

  const nav = el("nav", { class: "tabs" });
  const mainTabButton = el("button", { type: "button", "data-tab": "main" }, labels.mainTab);
  const bigramsTabButton = el(
    "button",
    { type: "button", "data-tab": "bigrams" },
    labels.bigramsTab,
  );
  nav.append(mainTabButton, bigramsTabButton);
  shell.appendChild(nav);

  const banner = el("p", { class: "banner", "data-role": "banner" });
  shell.appendChild(banner);

  // main page -------------------------------------------------------------
  const mainPage = el("section", { "data-page": "main" });
  shell.appendChild(mainPage);

  const form = el("form", { "data-role": "query-form" });
  mainPage.appendChild(form);

  const patternsInput = el("input", {
    type: "text",
    name: "patterns",
    "data-role": "patterns",
    placeholder: labels.patternsHint,
  });
  const patternsLabel = el("label", {}, `${labels.patternsLabel} `);
  patternsLabel.appendChild(patternsInput);
  form.appendChild(patternsLabel);

  const modeBox = el("span", { class: "mode" });
  const exactRadio = el("input", {
    type: "radio",
    name: "mode",
    value: "exact",
    "data-role": "mode-exact",
  });
  exactRadio.checked = true;
  const withinRadio = el("input", {
    type: "radio",
    name: "mode",
    value: "within",
    "data-role": "mode-within",
  });
  const exactLabel = el("label", {}, ` ${labels.modeExact}`);
  exactLabel.prepend(exactRadio);
  const withinLabel = el("label", {}, ` ${labels.modeWithin}`);
  withinLabel.prepend(withinRadio);
  modeBox.append(exactLabel, withinLabel);
  form.appendChild(modeBox);

  const fromInput = el("input", { type: "date", name: "from", "data-role": "from" });
  const toInput = el("input", { type: "date", name: "to", "data-role": "to" });
  const fromLabel = el("label", {}, `${labels.fromLabel} `);
  fromLabel.appendChild(fromInput);
  const toLabel = el("label", {}, `${labels.toLabel} `);
  toLabel.appendChild(toInput);
  form.append(fromLabel, toLabel);

  const windowInput = el("input", {
    type: "range",
    name: "window",
    min: String(MIN_WINDOW),
    max: String(MAX_WINDOW),
    value: "1",
    "data-role": "window",
  });
  const windowValue = el("output", { "data-role": "window-value" }, "1");
  const windowLabel = el("label", {}, `${labels.windowLabel} `);
  windowLabel.append(windowInput, windowValue);
  form.appendChild(windowLabel);

  const calculateButton = el(
    "button",
    { type: "submit", "data-role": "calculate" },
    labels.calculate,
  );
  form.appendChild(calculateButton);
  const validation = el("small", { "data-role": "validation" });
  form.appendChild(validation);

  const status = el("div", { "data-role": "status" });
  const chartBox = el("div", { "data-role": "chart" });
  const downloads = el("div", { "data-role": "downloads", hidden: "" });
  const csvLink = el("a", { "data-role": "download-csv" }, labels.downloadCsv);
  const svgButton = el("button", { type: "button", "data-role": "download-svg" }, labels.downloadSvg);
  const pngButton = el("button", { type: "button", "data-role": "download-png" }, labels.downloadPng);
  downloads.append(csvLink, svgButton, pngButton);
  const hitsBox = el("div", { "data-role": "hits" });
  mainPage.append(status, chartBox, downloads, hitsBox);

  // bigram finder ----------------------------------------------------------
  const bigramPageSection = el("section", { "data-page": "bigrams", hidden: "" });
  shell.appendChild(bigramPageSection);

  const bigramForm = el("form", { "data-role": "bigram-form" });
  bigramPageSection.appendChild(bigramForm);

  const bigramPattern = el("input", {
    type: "text",
    name: "pattern",
    "data-role": "bigram-pattern",
  });
  bigramForm.appendChild(bigramPattern);

  const bmodeSelect = el("select", { name: "bmode", "data-role": "bmode" });
  bmodeSelect.append(
    el("option", { value: "anywhere" }, labels.bmodeAnywhere),
    el("option", { value: "first" }, labels.bmodeFirst),
    el("option", { value: "second" }, labels.bmodeSecond),
  );
  bigramForm.appendChild(bmodeSelect);

  const findButton = el("button", { type: "submit", "data-role": "find" }, labels.searchBigrams);
  bigramForm.appendChild(findButton);
  const bigramValidation = el("small", { "data-role": "bigram-validation" });
  bigramForm.appendChild(bigramValidation);

  const bigramStatus = el("div", { "data-role": "bigram-status" });
  const bigramResults = el("div", { "data-role": "bigram-results" });
  bigramPageSection.append(bigramStatus, bigramResults);

  // --- wiring -------------------------------------------------------------

  patternsInput.addEventListener("input", () => main.setPatterns(patternsInput.value));
  exactRadio.addEventListener("change", () => {
    if (exactRadio.checked) main.setMode("exact");
  });
  withinRadio.addEventListener("change", () => {
    if (withinRadio.checked) main.setMode("within");
  });
  fromInput.addEventListener("input", () => main.setFrom(fromInput.value));
  toInput.addEventListener("input", () => main.setTo(toInput.value));
  windowInput.addEventListener("input", () => {
    main.setWindow(Number(windowInput.value));
    windowValue.textContent = windowInput.value;
  });
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    hitState = defaultTableState();
    void main.calculate().then(syncUrl);
  });

  bigramPattern.addEventListener("input", () => finder.setPattern(bigramPattern.value));
  bmodeSelect.addEventListener("change", () =>
    finder.setBmode(bmodeSelect.value as "anywhere" | "first" | "second"),
  );
  bigramForm.addEventListener("submit", (event) => {
    event.preventDefault();
    bigramPage = 0;
    void finder.search().then(syncUrl);
  });

  mainTabButton.addEventListener("click", () => {
    setTab("main");
    syncUrl();
  });
  bigramsTabButton.addEventListener("click", () => {
    setTab("bigrams");
    syncUrl();
  });

  svgButton.addEventListener("click", () => {
    if (currentSvg) triggerDownload(svgDataUrl(currentSvg), "frequencies.svg");
  });
  pngButton.addEventListener("click", () => {
    if (!currentSvg) return;
    void pngFromSvg(currentSvg, DEFAULT_LAYOUT.width, DEFAULT_LAYOUT.height)
      .then((url) => triggerDownload(url, "frequencies.png"))
      .catch(() => undefined);
  });

  // --- rendering ----------------------------------------------------------

  function setTab(next: Tab): void {
    tab = next;
    mainPage.hidden = next !== "main";
    bigramPageSection.hidden = next !== "bigrams";
    mainTabButton.classList.toggle("active", next === "main");
    bigramsTabButton.classList.toggle("active", next === "bigrams");
  }

  function syncUrl(): void {
    if (typeof history === "undefined") return;
    const fragment = encodeState({
      tab,
      patterns: main.draft.patterns || undefined,
      mode: main.draft.mode,
      from: main.draft.from || undefined,
      to: main.draft.to || undefined,
      window: main.draft.window,
      bpattern: finder.draft.pattern || undefined,
      bmode: finder.draft.bmode,
    });
    history.replaceState(null, "", fragment);
  }

  function syncMainInputs(): void {
    patternsInput.value = main.draft.patterns;
    exactRadio.checked = main.draft.mode === "exact";
    withinRadio.checked = main.draft.mode === "within";
    fromInput.value = main.draft.from;
    toInput.value = main.draft.to;
    windowInput.value = String(main.draft.window);
    windowValue.textContent = String(main.draft.window);
  }

  function syncBigramInputs(): void {
    bigramPattern.value = finder.draft.pattern;
    bmodeSelect.value = finder.draft.bmode;
  }

  function renderMain(): void {
    const problem = main.validationError();
    validation.textContent = problem ?? "";
    calculateButton.disabled = problem !== null || main.loading;
    status.textContent = main.loading ? labels.loading : main.error ?? "";

    const result = main.result;
    if (!result) {
      chartBox.textContent = "";
      hitsBox.textContent = "";
      downloads.hidden = true;
      currentSvg = "";
      return;
    }
    const dates = result.series[0]?.points.map((point) => point.date) ?? [];
    currentSvg = renderChartSvg(result.series, dates);
    chartBox.innerHTML = currentSvg;
    downloads.hidden = false;
    const params = main.submittedParams();
    if (params) {
      csvLink.setAttribute("href", api.exportCsvUrl(params));
      csvLink.setAttribute("download", "frequencies.csv");
    }
    if (result.meta.dropped_patterns.length) {
      status.textContent = labels.emptyDropped(result.meta.dropped_patterns);
    }
    renderHits();
  }

  function renderHits(): void {
    hitsBox.textContent = "";
    const rows = main.result?.hits;
    if (!rows) {
      return;
    }
    const title = el("h3", {}, labels.hitTableTitle);
    const search = el("input", {
      type: "search",
      placeholder: labels.hitSearchPlaceholder,
      "data-role": "hit-search",
    });
    search.value = hitState.search;
    search.addEventListener("input", () => {
      hitState = setSearch(hitState, search.value);
      renderHits();
    });

    const view = tableView(rows, hitState);
    const table = el("table", { "data-role": "hit-table" });
    const head = el("tr");
    const columns: [SortKey, string][] = [
      ["form", labels.columnForm],
      ["pattern", labels.columnPattern],
      ["count", labels.columnCount],
    ];
    for (const [key, heading] of columns) {
      const cell = el("th", { "data-sort": key });
      const button = el("button", { type: "button" }, heading);
      button.addEventListener("click", () => {
        hitState = toggleSort(hitState, key);
        renderHits(); // pure view change: no network involved
      });
      cell.appendChild(button);
      head.appendChild(cell);
    }
    table.appendChild(head);
    for (const row of view.rows) {
      const tr = el("tr");
      tr.append(
        el("td", {}, row.word_form),
        el("td", {}, row.pattern),
        el("td", { class: "count" }, String(row.abs_count_in_range)),
      );
      table.appendChild(tr);
    }

    const pager = el("div", { class: "pager" });
    const prev = el("button", { type: "button", "data-role": "hit-prev" }, labels.previousPage);
    const next = el("button", { type: "button", "data-role": "hit-next" }, labels.nextPage);
    prev.disabled = view.page === 0;
    next.disabled = view.page >= view.pageCount - 1;
    prev.addEventListener("click", () => {
      hitState = setPage(hitState, view.page - 1);
      renderHits();
    });
    next.addEventListener("click", () => {
      hitState = setPage(hitState, view.page + 1);
      renderHits();
    });
    const where = el("span", {}, labels.pageOf(view.page + 1, view.pageCount));
    pager.append(prev, where, next);

    hitsBox.append(title, search, table, pager);
  }

  function renderBigrams(): void {
    const problem = finder.validationError();
    bigramValidation.textContent = problem ?? "";
    findButton.disabled = problem !== null || finder.loading;
    bigramStatus.textContent = finder.loading ? labels.loading : finder.error ?? "";

    bigramResults.textContent = "";
    const result = finder.result;
    if (!result) {
      return;
    }
    if (!result.results.length) {
      bigramResults.textContent = labels.noResults;
      return;
    }
    const table = el("table", { "data-role": "bigram-table" });
    const head = el("tr");
    head.append(
      el("th", {}, labels.columnFirst),
      el("th", {}, labels.columnSecond),
      el("th", {}, labels.columnCount),
    );
    table.appendChild(head);
    const pageSize = 20;
    const start = bigramPage * pageSize;
    for (const hit of result.results.slice(start, start + pageSize)) {
      const tr = el("tr");
      const link = el("button", { type: "button", class: "bigram-link" }, `${hit.form1} ${hit.form2}`);
      link.addEventListener("click", () => finder.clickThrough(hit));
      const linkCell = el("td", { colspan: "2" });
      linkCell.appendChild(link);
      tr.append(linkCell, el("td", { class: "count" }, String(hit.count)));
      table.appendChild(tr);
    }
    bigramResults.appendChild(table);

    const pages = Math.max(1, Math.ceil(result.results.length / pageSize));
    if (pages > 1) {
      const pager = el("div", { class: "pager" });
      const prev = el("button", { type: "button" }, labels.previousPage);
      const next = el("button", { type: "button" }, labels.nextPage);
      prev.disabled = bigramPage === 0;
      next.disabled = bigramPage >= pages - 1;
      prev.addEventListener("click", () => {
        bigramPage -= 1;
        renderBigrams();
      });
      next.addEventListener("click", () => {
        bigramPage += 1;
        renderBigrams();
      });
      pager.append(prev, el("span", {}, labels.pageOf(bigramPage + 1, pages)), next);
      bigramResults.appendChild(pager);
    }
  }

  function renderBanner(): void {
    const meta = main.meta;
    banner.textContent = meta
      ? labels.corpusBanner(meta.first_date, meta.last_date, meta.token_total)
      : "";
    if (meta) {
      fromInput.min = meta.first_date;
      fromInput.max = meta.last_date;
      toInput.min = meta.first_date;
      toInput.max = meta.last_date;
    }
  }

  main.subscribe(() => {
    renderBanner();
    renderMain();
  });
  finder.subscribe(renderBigrams);

  // --- startup ------------------------------------------------------------

  if (typeof location !== "undefined" && location.hash) {
    const restored = decodeState(location.hash);
    if (restored.patterns !== undefined) main.draft.patterns = restored.patterns;
    if (restored.mode !== undefined) main.draft.mode = restored.mode;
    if (restored.from !== undefined) main.draft.from = restored.from;
    if (restored.to !== undefined) main.draft.to = restored.to;
    if (restored.window !== undefined) main.draft.window = restored.window;
    if (restored.bpattern !== undefined) finder.draft.pattern = restored.bpattern;
    if (restored.bmode !== undefined) finder.draft.bmode = restored.bmode;
    setTab(restored.tab);
  } else {
    setTab("main");
  }
  syncMainInputs();
  syncBigramInputs();
  renderMain();
  renderBigrams();

  void api
    .meta()
    .then((meta) => {
      main.applyMeta(meta);
      syncMainInputs();
    })
    .catch((exc) => {
      banner.textContent = String(exc instanceof Error ? exc.message : exc);
      const retry = el("button", { type: "button", "data-role": "retry" }, labels.retry);
      retry.addEventListener("click", () => {
        banner.textContent = "";
        void api.meta().then((meta) => {
          main.applyMeta(meta);
          syncMainInputs();
        });
      });
      banner.appendChild(retry);
    });

  return {
    main,
    finder,
    setTab: (next) => {
      setTab(next);
      syncUrl();
    },
    currentTab: () => tab,
  };
}
