/**
 * The (alpha, beta) unit square with the two trivial-pin curves. Curve
 * rendering is cosmetic (sampled floats); the margins shown for a clicked
 * point come from the classify endpoint and are displayed verbatim.
 */

import type { ApiClient, ClassifyView } from "./api.js";

const CLICK_DENOMINATOR = 64n;
const SVG_NS = "http://www.w3.org/2000/svg";

export interface PlaneMetrics {
	left: number;
	top: number;
	size: number;
}

export class RegimePlane {
	readonly root: HTMLElement;
	readonly svg: SVGSVGElement;
	readonly readout: HTMLDivElement;
	lastResult: ClassifyView | null = null;
	private readonly api: ApiClient;
	private readonly metrics: () => PlaneMetrics;

	constructor(
		root: HTMLElement,
		api: ApiClient,
		metrics?: () => PlaneMetrics,
	) {
		this.root = root;
		this.api = api;
		this.metrics =
			metrics ??
			(() => {
				const rect = this.svg.getBoundingClientRect();
				return { left: rect.left, top: rect.top, size: rect.width || 1 };
			});
		root.classList.add("regime-plane");

		this.svg = document.createElementNS(SVG_NS, "svg");
		this.svg.setAttribute("viewBox", "0 0 100 100");
		this.svg.appendChild(this.curvePath(true));
		this.svg.appendChild(this.curvePath(false));
		const frame = document.createElementNS(SVG_NS, "rect");
		frame.setAttribute("x", "0");
		frame.setAttribute("y", "0");
		frame.setAttribute("width", "100");
		frame.setAttribute("height", "100");
		frame.setAttribute("class", "plane-frame");
		this.svg.appendChild(frame);

		this.readout = document.createElement("div");
		this.readout.className = "plane-readout";
		this.readout.textContent = "click a point to classify it";
		root.append(this.svg, this.readout);

		const handler = (e: MouseEvent) => void this.handleClick(e.clientX, e.clientY);
		this.svg.addEventListener("click", handler);
	}

	/** beta = 2 - 1/alpha (bobCurve) and its mirror, sampled for display. */
	private curvePath(bobCurve: boolean): SVGPathElement {
		const path = document.createElementNS(SVG_NS, "path");
		const points: string[] = [];
		for (let i = 0; i <= 200; i++) {
			const a = 0.5 + (0.5 * i) / 200;
			const b = 2 - 1 / a;
			if (b < 0 || b > 1) continue;
			const x = bobCurve ? a : b;
			const y = bobCurve ? b : a;
			points.push(`${(x * 100).toFixed(2)},${(100 - y * 100).toFixed(2)}`);
		}
		path.setAttribute("d", `M ${points.join(" L ")}`);
		path.setAttribute("class", bobCurve ? "curve-bob" : "curve-alice");
		path.setAttribute("fill", "none");
		return path;
	}

	/** Quantize a click to p/64 coordinates and ask the service. */
	async handleClick(clientX: number, clientY: number): Promise<ClassifyView> {
		const { left, top, size } = this.metrics();
		const tx = Math.min(Math.max((clientX - left) / size, 0), 1);
		const ty = Math.min(Math.max((clientY - top) / size, 0), 1);
		const alphaNum = BigInt(Math.max(1, Math.min(63, Math.round(tx * 64))));
		const betaNum = BigInt(Math.max(1, Math.min(63, Math.round((1 - ty) * 64))));
		const alpha = `${alphaNum}/${CLICK_DENOMINATOR}`;
		const beta = `${betaNum}/${CLICK_DENOMINATOR}`;
		const result = await this.api.classify(alpha, beta);
		this.lastResult = result;
		const margins = Object.entries(result.margins)
			.map(([name, value]) => `${name} = ${value}`)
			.join(" | ");
		this.readout.textContent =
			`alpha ${result.alpha}, beta ${result.beta}: ${result.regime}` +
			(margins ? ` | ${margins}` : "");
		return result;
	}
}
