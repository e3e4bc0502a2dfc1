// Built with `wasm-pack build crates/wasm --target web`, which writes ../pkg.
import init, { walk_path, rescaled_histogram, product_survival } from "../pkg/levywalk_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

function params() {
  return { alpha: num("alpha"), beta: num("beta"), seed: Math.max(0, Math.floor(num("seed"))) >>> 0 };
}

function report(fn) {
  try {
    $("status").textContent = "";
    fn();
  } catch (e) {
    $("status").textContent = String(e);
  }
}

function clear(ctx) {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  ctx.strokeStyle = "#222";
  ctx.fillStyle = "#36c";
}

function drawPath() {
  const { alpha, beta, seed } = params();
  const horizon = Math.pow(10, num("horizon"));
  const xy = walk_path(alpha, beta, $("variant").value, horizon, 2000, seed);
  const ctx = $("path").getContext("2d");
  clear(ctx);
  let r = 1e-12;
  for (let i = 0; i < xy.length; i += 3) r = Math.max(r, Math.abs(xy[i + 1]), Math.abs(xy[i + 2]));
  const w = ctx.canvas.width / 2;
  const s = (0.95 * w) / r;
  ctx.beginPath();
  for (let i = 0; i < xy.length; i += 3) {
    const px = w + s * xy[i + 1], py = w - s * xy[i + 2];
    i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
  }
  ctx.stroke();
}

function bars(ctx, ys) {
  clear(ctx);
  const { width, height } = ctx.canvas;
  const top = Math.max(...ys, 1e-12);
  const bw = width / ys.length;
  ys.forEach((y, i) => {
    const h = (0.95 * height * y) / top;
    ctx.fillRect(i * bw, height - h, bw - 1, h);
  });
}

function drawHistogram() {
  const { alpha, beta, seed } = params();
  const n = Math.pow(10, num("logn"));
  bars($("hist").getContext("2d"), rescaled_histogram(alpha, beta, n, 4000, 80, 8, seed));
}

function drawTail() {
  const { alpha, beta, seed } = params();
  const rows = product_survival(alpha, beta, 200000, seed);
  const ctx = $("tail").getContext("2d");
  clear(ctx);
  const { width, height } = ctx.canvas;
  let top = 1e-12;
  for (let i = 0; i < rows.length; i += 3) top = Math.max(top, rows[i + 1], isNaN(rows[i + 2]) ? 0 : 1 + rows[i + 2]);
  const x = (z) => (width * (Math.log10(z) - 1)) / 3;
  const y = (v) => height - (0.95 * height * v) / top;
  for (let i = 0; i < rows.length; i += 3) ctx.fillRect(x(rows[i]) - 2, y(rows[i + 1]) - 2, 4, 4);
  if (!isNaN(rows[2])) {
    // Exact critical tail (1 + alpha ln z) z^-alpha, rescaled.
    ctx.beginPath();
    for (let i = 0; i < rows.length; i += 3) {
      i === 0 ? ctx.moveTo(x(rows[i]), y(1 + rows[i + 2])) : ctx.lineTo(x(rows[i]), y(1 + rows[i + 2]));
    }
    ctx.stroke();
  }
}

function refreshLabels() {
  const { alpha, beta } = params();
  $("alpha-v").textContent = alpha.toFixed(2);
  $("beta-v").textContent = beta.toFixed(2);
  $("horizon-v").textContent = "1e" + num("horizon");
  $("logn-v").textContent = "1e" + num("logn");
  const regime = alpha < beta ? "alpha < beta: coupled, space scale n^(1/alpha)"
    : alpha > beta ? "beta < alpha: space scale n^(1/beta)"
    : "alpha = beta: critical, space scale (n ln n)^(1/alpha)";
  $("regime").textContent = regime;
}

await init();
for (const id of ["alpha", "beta", "seed", "variant", "horizon", "logn"]) {
  $(id).addEventListener("input", () => { refreshLabels(); report(drawPath); });
}
$("hist-run").addEventListener("click", () => report(drawHistogram));
$("tail-run").addEventListener("click", () => report(drawTail));
refreshLabels();
report(drawPath);
