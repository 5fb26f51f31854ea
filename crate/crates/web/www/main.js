// Glue generated by `wasm-bindgen --target web` lands in ./pkg (see README).
import init, { butterfly, hull_pattern, common_gap, interface_density } from "./pkg/iwatsuka_web.js";

const $ = (id) => document.getElementById(id);

function report(id, text, isError = false) {
  const el = $(id);
  el.textContent = text;
  el.className = isError ? "err" : "";
}

// Sites are ordered n1-major on [-m, m]^2; n1 runs right, n2 runs up.
function drawGrid(canvas, m, value) {
  const side = 2 * m + 1;
  const cell = canvas.width / side;
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (let i = 0; i < side * side; i++) {
    const col = Math.floor(i / side);
    const row = side - 1 - (i % side);
    ctx.fillStyle = value(i);
    ctx.fillRect(col * cell, row * cell, Math.ceil(cell), Math.ceil(cell));
  }
}

function drawButterfly() {
  const q = Number($("bf-q").value);
  const k = Number($("bf-k").value);
  $("bf-q-val").textContent = q;
  const t0 = performance.now();
  let pts;
  try {
    pts = butterfly(q, k);
  } catch (e) {
    report("bf-msg", e.message ?? String(e), true);
    return;
  }
  const c = $("bf");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  ctx.fillStyle = "#1d3c6e";
  for (let i = 0; i < pts.length; i += 2) {
    const x = (pts[i + 1] + 4) / 8 * c.width;
    const y = c.height - pts[i] * c.height;
    ctx.fillRect(x, y, 1.5, 1.5);
  }
  report("bf-msg", `${pts.length / 2} points, energy on x in [-4, 4], flux/2pi on y, ${(performance.now() - t0).toFixed(0)} ms`);
}

let patterns = null;

function loadPatterns() {
  const m = Number($("hp-m").value);
  try {
    patterns = { m, flat: hull_pattern($("hp-slope").value, m) };
  } catch (e) {
    patterns = null;
    report("hp-msg", e.message ?? String(e), true);
    return;
  }
  const size = (2 * m + 1) ** 2;
  const count = patterns.flat.length / size;
  $("hp-i").max = count - 1;
  $("hp-i").value = Math.min(Number($("hp-i").value), count - 1);
  report("hp-msg", `${count} distinct patterns on the ${2 * m + 1} x ${2 * m + 1} window`);
  drawPattern();
}

function drawPattern() {
  if (!patterns) return;
  const { m, flat } = patterns;
  const size = (2 * m + 1) ** 2;
  const idx = Number($("hp-i").value);
  $("hp-i-val").textContent = idx;
  const slice = flat.subarray(idx * size, (idx + 1) * size);
  drawGrid($("hp"), m, (i) => (slice[i] ? "#d9822b" : "#2b6cd9"));
}

function drawDensity() {
  const slope = $("id-slope").value;
  const bp = $("id-bp").value;
  const bm = $("id-bm").value;
  const m = Number($("id-m").value);
  report("id-msg", "computing...");
  // let the message paint before the eigensolve blocks the thread
  setTimeout(() => {
    try {
      const t0 = performance.now();
      const [lo, hi] = common_gap(bp, bm);
      const rho = interface_density(slope, bp, bm, m, lo, hi);
      const max = rho.reduce((a, b) => Math.max(a, b), 0) || 1;
      drawGrid($("id"), m, (i) => {
        const v = Math.sqrt(rho[i] / max);
        return `rgb(${Math.round(255 * v)}, ${Math.round(120 * v)}, ${Math.round(40 + 60 * (1 - v))})`;
      });
      report("id-msg", `states in the common gap (${lo.toFixed(3)}, ${hi.toFixed(3)}), ${(performance.now() - t0).toFixed(0)} ms; the outer boundary carries edge states too`);
    } catch (e) {
      report("id-msg", e.message ?? String(e), true);
    }
  }, 10);
}

await init();
$("bf-q").addEventListener("input", drawButterfly);
$("bf-k").addEventListener("change", drawButterfly);
$("hp-slope").addEventListener("change", loadPatterns);
$("hp-m").addEventListener("change", loadPatterns);
$("hp-i").addEventListener("input", drawPattern);
$("id-run").addEventListener("click", drawDensity);
drawButterfly();
loadPatterns();
drawDensity();
