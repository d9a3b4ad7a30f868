import init, { Medium, spectrum, chiCut, propagateCut } from "./pkg/ddr_web.js";

const num = (id) => Number(document.getElementById(id).value);
const status = document.getElementById("status");

function medium() {
  return new Medium(num("pump"), num("microwave"), num("control"), num("delta"));
}

// series: [{ ys, color }], all drawn on one shared y range
function plot(canvas, xs, series, xlabel) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  let lo = Infinity, hi = -Infinity;
  for (const s of series) for (const y of s.ys) { lo = Math.min(lo, y); hi = Math.max(hi, y); }
  if (!(hi > lo)) { hi = lo + 1; }
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - lo) / (hi - lo)) * (h - 2 * pad);
  ctx.strokeStyle = "#000";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  if (lo < 0 && hi > 0) {
    ctx.strokeStyle = "#ddd";
    ctx.beginPath(); ctx.moveTo(pad, py(0)); ctx.lineTo(w - pad, py(0)); ctx.stroke();
  }
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.beginPath();
    s.ys.forEach((y, i) => (i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y))));
    ctx.stroke();
  }
  ctx.fillStyle = "#000";
  ctx.fillText(x0.toPrecision(3), pad, h - pad + 14);
  ctx.fillText(x1.toPrecision(3), w - pad - 30, h - pad + 14);
  ctx.fillText(xlabel, w / 2 - 20, h - 8);
  ctx.fillText(hi.toPrecision(3), 2, pad);
  ctx.fillText(lo.toPrecision(3), 2, h - pad);
}

// splits a flat array with the given stride into columns
function columns(flat, stride) {
  const cols = Array.from({ length: stride }, () => []);
  for (let i = 0; i < flat.length; i++) cols[i % stride].push(flat[i]);
  return cols;
}

function rescale(ys, target) {
  const m = Math.max(...ys.map(Math.abs));
  return m > 0 ? ys.map((y) => (y * target) / m) : ys;
}

function guarded(f) {
  return () => {
    status.textContent = "";
    try { f(); } catch (e) { status.textContent = String(e.message ?? e); }
  };
}

function runSpectrum() {
  const [d, re, im] = columns(spectrum(medium(), -3, 3, 1201), 3);
  plot(document.getElementById("spectrum"), d, [
    { ys: re, color: "#1f77b4" },
    { ys: im, color: "#d62728" },
  ], "probe detuning / gamma");
}

function runCut() {
  const [x, g, re, im] = columns(chiCut(medium(), num("sep"), num("points")), 4);
  const peak = Math.max(...re.map(Math.abs), ...im.map(Math.abs));
  plot(document.getElementById("cut"), x, [
    { ys: rescale(g, peak), color: "#999" },
    { ys: re, color: "#1f77b4" },
    { ys: im, color: "#d62728" },
  ], "x / cm");
}

function runProp() {
  const result = propagateCut(medium(), num("sep"), num("length"), num("points"));
  const [x, pin, pout, cout] = columns(result.values, 4);
  const top = Math.max(...pin, ...pout);
  plot(document.getElementById("prop"), x, [
    { ys: pin, color: "#999" },
    { ys: pout, color: "#d62728" },
    { ys: rescale(cout, top), color: "#2ca02c" },
  ], "x / cm");
  document.getElementById("transmission").textContent =
    `integrated transmission ${result.transmission.toPrecision(4)}`;
}

await init();
document.getElementById("run-spectrum").onclick = guarded(runSpectrum);
document.getElementById("run-cut").onclick = guarded(runCut);
document.getElementById("run-prop").onclick = guarded(runProp);
guarded(runSpectrum)();
