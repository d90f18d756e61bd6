import init, { Demo } from "./pkg/semipolar_web.js";

const $ = (id) => document.getElementById(id);
let demo = null;
let layout = null;
let cells = [];
let picked = [];
let last = null;

function op() {
  return document.querySelector("input[name=op]:checked").value;
}

function build() {
  const p = Number($("p").value);
  const m = Number($("m").value);
  try {
    demo = new Demo(p, m);
  } catch (e) {
    $("info").textContent = `cannot build: ${e}`;
    return;
  }
  layout = JSON.parse(demo.layout());
  picked = [];
  last = null;
  drawGrid();
  $("info").textContent = `${layout.size} points, n = ${layout.n}`;
}

function label(i) {
  const c = layout.coords[i];
  return `[${c.slice(0, layout.nu).join(",")} | ${c.slice(layout.nu).join(",")}]`;
}

function drawGrid() {
  const grid = $("grid");
  grid.replaceChildren();
  cells = [];
  const per = layout.rows * layout.cols;
  for (let b = 0; b < layout.blocks; b++) {
    const block = document.createElement("div");
    block.className = "block";
    block.style.gridTemplateColumns = `repeat(${layout.cols}, 14px)`;
    const h = document.createElement("h4");
    h.textContent = `v = ${b}`;
    block.append(h);
    for (let k = 0; k < per; k++) {
      const i = b * per + k;
      const cell = document.createElement("div");
      cell.className = "cell";
      cell.title = `#${i} ${label(i)}`;
      cell.addEventListener("click", () => click(i));
      block.append(cell);
      cells.push(cell);
    }
    grid.append(block);
  }
}

function paint(a = [], b = [], sel = []) {
  const sa = new Set(a);
  const sb = new Set(b);
  cells.forEach((cell, i) => {
    const x = sa.has(i);
    const y = sb.has(i);
    cell.className = "cell" + (x && y ? " ab" : x ? " a" : y ? " b" : "") + (sel.includes(i) ? " sel" : "");
  });
}

function legend(items) {
  $("legend").innerHTML = items.map(([cls, text]) => `<span class="cell ${cls}"></span>${text}`).join("");
}

function click(i) {
  const mode = op();
  if (mode === "joinable") {
    const r = JSON.parse(demo.joinable(i));
    paint(r.members, [], [i]);
    legend([["a", "points joinable with the selected point"]]);
    $("info").textContent = `${label(i)}: ${r.members.length} joinable points, affine dimension ${r.dim}`;
  } else if (mode === "lines") {
    const r = JSON.parse(demo.singular_lines(i));
    paint(r.lines.flatMap((l) => l.points), [], [i]);
    legend([["a", "points on singular lines through the selected point"]]);
    const rows = r.lines.map((l) => `  direction [${l.dir.join(",")}]: ${l.points.map(label).join(" ")}`);
    $("info").textContent = `${r.lines.length} singular lines through ${label(i)}\n${rows.join("\n")}`;
  } else {
    picked = picked.length === 2 ? [i] : [...picked, i];
    if (picked.length < 2 || picked[0] === picked[1]) {
      if (picked.length === 2) picked = [i];
      paint([], [], picked);
      $("info").textContent = `first point ${label(i)}; pick a second one`;
      return;
    }
    last = JSON.parse(demo.bisectors(picked[0], picked[1]));
    showBisector();
  }
}

function showBisector() {
  if (!last) return;
  const kind = $("kind").value;
  const set = last[kind];
  paint(set.points, [], last.pair);
  legend([["a", kind === "sphere" ? "sphere through the second point, centred at the first" : `bisector L_${kind}`]]);
  const eq = set.equation ? `eta(u0, u) = ${set.equation.beta} + ${set.equation.alpha}·v, u0 = [${set.equation.u0.join(",")}]` : "no equation";
  const summary = ["t", "m", "sphere"].map((k) => `  ${k}: ${last[k].classification}, ${last[k].points.length} points`);
  $("info").textContent = `${label(last.pair[0])}, ${label(last.pair[1])}\n${kind}: ${eq}\n${summary.join("\n")}`;
}

await init();
$("build").addEventListener("click", build);
$("kind").addEventListener("change", showBisector);
document.querySelectorAll("input[name=op]").forEach((r) =>
  r.addEventListener("change", () => {
    $("bis-kind").hidden = op() !== "bisectors";
    picked = [];
    last = null;
    paint();
    legend([]);
  }),
);
build();
