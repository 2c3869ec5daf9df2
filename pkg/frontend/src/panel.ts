import type { CategoryDto } from "./types";

/**
 * Object panel: every category as a clickable row with its community
 * color, narrowed by the filter box text (case-insensitive substring).
 */
export function renderPanel(
  listElement: HTMLElement,
  categories: CategoryDto[],
  options: {
    colors?: Map<number, string>;
    filter?: string;
    selected?: number | null;
    onSelect?: (id: number) => void;
  } = {},
): number {
  const needle = (options.filter ?? "").trim().toLowerCase();
  const visible = needle
    ? categories.filter((c) => c.name.toLowerCase().includes(needle))
    : categories;

  listElement.replaceChildren();
  for (const category of visible) {
    const row = document.createElement("button");
    row.type = "button";
    row.className = "panel-item";
    row.dataset.id = String(category.id);
    if (options.selected === category.id) row.classList.add("selected");

    const dot = document.createElement("span");
    dot.className = "dot";
    dot.style.backgroundColor = options.colors?.get(category.id) ?? "#555";

    const label = document.createElement("span");
    label.className = "panel-name";
    label.textContent = category.name;

    const group = document.createElement("span");
    group.className = "panel-super";
    group.textContent = category.supercategory;

    row.append(dot, label, group);
    row.addEventListener("click", () => options.onSelect?.(category.id));
    listElement.appendChild(row);
  }
  return visible.length;
}
