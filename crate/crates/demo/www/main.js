import init, { name_point, hull_raster, pv_det } from "./pkg/moment_naming_demo.js";

const $ = (id) => document.getElementById(id);
const canvas = $("plane");
const ctx = canvas.getContext("2d");
const PAD = 0.08;

let view = null;

// Box around the hull: m_1 spans the interval, m_2 spans t^2 over it.
function makeView(tMin, tMax) {
  const sq = [tMin * tMin, tMax * tMax];
  const yLo = tMin <= 0 && tMax >= 0 ? 0 : Math.min(...sq);
  const yHi = Math.max(...sq);
  const dx = (tMax - tMin) * PAD;
  const dy = (yHi - yLo) * PAD;
  return { tMin, tMax, x0: tMin - dx, x1: tMax + dx, y0: yLo - dy, y1: yHi + dy };
}

const toPx = (x, y) => [
  ((x - view.x0) / (view.x1 - view.x0)) * canvas.width,
  ((view.y1 - y) / (view.y1 - view.y0)) * canvas.height,
];
const fromPx = (px, py) => [
  view.x0 + (px / canvas.width) * (view.x1 - view.x0),
  view.y1 - (py / canvas.height) * (view.y1 - view.y0),
];

const SHADE = [[255, 255, 255], [90, 90, 200], [190, 200, 245]];

function drawHull() {
  const w = canvas.width;
  const h = canvas.height;
  const cells = hull_raster(view.tMin, view.tMax, w / 2, h / 2, view.x0, view.x1, view.y0, view.y1);
  const img = ctx.createImageData(w, h);
  for (let y = 0; y < h; y++) {
    for (let x = 0; x < w; x++) {
      const rgb = SHADE[cells[(y >> 1) * (w / 2) + (x >> 1)]];
      const o = 4 * (y * w + x);
      img.data.set([...rgb, 255], o);
    }
  }
  ctx.putImageData(img, 0, 0);

  ctx.strokeStyle = "#333";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  for (let i = 0; i <= 200; i++) {
    const t = view.tMin + ((view.tMax - view.tMin) * i) / 200;
    const [px, py] = toPx(t, t * t);
    i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
  }
  ctx.stroke();
}

function showNaming(x, y) {
  drawHull();
  const out = $("naming");
  const [px, py] = toPx(x, y);
  ctx.fillStyle = "#000";
  ctx.fillRect(px - 3, py - 3, 6, 6);
  let flat;
  try {
    flat = name_point(view.tMin, view.tMax, new Float64Array([x, y]));
  } catch (e) {
    out.className = "err";
    out.textContent = `(${x.toFixed(4)}, ${y.toFixed(4)})\n${e}`;
    return;
  }
  out.className = "";
  const lines = [`(${x.toFixed(4)}, ${y.toFixed(4)})`];
  ctx.strokeStyle = "#c33";
  for (let j = 0; j < flat.length; j += 2) {
    const t = flat[j];
    const c = flat[j + 1];
    lines.push(`  t = ${t.toPrecision(8)}   c = ${c.toPrecision(8)}`);
    const [ax, ay] = toPx(t, t * t);
    ctx.fillStyle = "#c33";
    ctx.beginPath();
    ctx.arc(ax, ay, 3 + 6 * Math.sqrt(Math.max(c, 0)), 0, 2 * Math.PI);
    ctx.fill();
    ctx.beginPath();
    ctx.moveTo(ax, ay);
    ctx.lineTo(px, py);
    ctx.stroke();
  }
  out.textContent = lines.join("\n");
}

function redraw() {
  const tMin = parseFloat($("tmin").value);
  const tMax = parseFloat($("tmax").value);
  if (!(tMax > tMin)) {
    $("naming").className = "err";
    $("naming").textContent = "need t_min < t_max";
    return;
  }
  view = makeView(tMin, tMax);
  drawHull();
  $("naming").className = "";
  $("naming").textContent = "click a point";
}

function updatePv() {
  const out = $("pvout");
  const n = parseInt($("pvn").value, 10);
  const nodes = $("pvnodes").value.split(",").map((s) => s.trim()).filter((s) => s !== "").map(Number);
  try {
    const [rec, exact] = pv_det(n, new Float64Array(nodes));
    out.className = "";
    out.textContent = `recursion ${rec}\nexact     ${exact}`;
  } catch (e) {
    out.className = "err";
    out.textContent = String(e);
  }
}

await init();
$("redraw").addEventListener("click", redraw);
canvas.addEventListener("click", (ev) => {
  const r = canvas.getBoundingClientRect();
  const [x, y] = fromPx(ev.clientX - r.left, ev.clientY - r.top);
  showNaming(x, y);
});
$("pvn").addEventListener("input", updatePv);
$("pvnodes").addEventListener("input", updatePv);
redraw();
updatePv();
