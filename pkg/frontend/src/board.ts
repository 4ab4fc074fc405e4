/**
 * Number-line board for one session.
 *
 * The board contains no rule logic: every committed move, bracket, hint and
 * violation is echoed from the service, and every rational it displays is
 * the service's string rendered character for character. The client's only
 * arithmetic is converting a drag position to an exact "p/q" submission.
 */

import type { ApiClient, CreateSessionRequest, HintView, SessionView } from "./api.js";
import {
	type Rat,
	add,
	placeInRange,
	ratFromString,
	ratToString,
	sliderFraction,
	toNumber,
} from "./rational.js";

export interface BoardMetrics {
	left: number;
	width: number;
}

export interface BoardOptions {
	/** Test hook: jsdom has no layout, so measurements are injectable. */
	metrics?: () => BoardMetrics;
	/** When false, drags are not clamped to the feasible region; the service
	 * must then reject out-of-range submissions (diagnostic mode). */
	clampDrags?: boolean;
}

const PLAYER_CLASS: Record<string, string> = { bob: "move-bob", alice: "move-alice" };
/** Auto-zoom threshold: bracket narrower than this fraction of the window. */
const ZOOM_TRIGGER = 0.05;
/** New window span, in bracket widths, after a zoom step. */
const ZOOM_SPAN = 12;

export class Board {
	readonly root: HTMLElement;
	private readonly api: ApiClient;
	private readonly metrics: () => BoardMetrics;
	clampDrags: boolean;

	view: SessionView | null = null;
	hint: HintView | null = null;
	private window: { lo: number; hi: number } = { lo: -1, hi: 1 };
	private dragX: number | null = null;
	private lastOperation: Promise<unknown> = Promise.resolve();

	readonly track: HTMLDivElement;
	readonly lane: HTMLDivElement;
	readonly overlay: HTMLDivElement;
	readonly preview: HTMLDivElement;
	readonly movesList: HTMLOListElement;
	readonly bracketLabel: HTMLDivElement;
	readonly statusLabel: HTMLDivElement;
	readonly violationBanner: HTMLDivElement;
	readonly verdictPanel: HTMLDivElement;
	readonly loInput: HTMLInputElement;
	readonly hiInput: HTMLInputElement;
	readonly submitButton: HTMLButtonElement;

	constructor(root: HTMLElement, api: ApiClient, options: BoardOptions = {}) {
		this.root = root;
		this.api = api;
		this.clampDrags = options.clampDrags ?? true;
		this.metrics =
			options.metrics ??
			(() => {
				const rect = this.track.getBoundingClientRect();
				return { left: rect.left, width: rect.width || 1 };
			});

		root.classList.add("board");
		this.statusLabel = el("div", "board-status");
		this.track = el("div", "board-track");
		this.lane = el("div", "board-lane");
		this.overlay = el("div", "board-overlay");
		this.preview = el("div", "board-preview");
		this.track.append(this.overlay, this.lane, this.preview);
		this.bracketLabel = el("div", "board-bracket");
		this.violationBanner = el("div", "board-violation");
		this.violationBanner.hidden = true;
		this.verdictPanel = el("div", "board-verdict");
		this.verdictPanel.hidden = true;
		this.movesList = document.createElement("ol");
		this.movesList.className = "board-moves";

		const entry = el("div", "board-entry");
		this.loInput = document.createElement("input");
		this.loInput.placeholder = "lo p/q";
		this.hiInput = document.createElement("input");
		this.hiInput.placeholder = "hi p/q";
		this.submitButton = document.createElement("button");
		this.submitButton.textContent = "submit move";
		this.submitButton.addEventListener("click", () => {
			void this.submitInterval(this.loInput.value.trim(), this.hiInput.value.trim());
		});
		entry.append(this.loInput, this.hiInput, this.submitButton);

		root.append(
			this.statusLabel,
			this.track,
			this.bracketLabel,
			this.violationBanner,
			this.verdictPanel,
			entry,
			this.movesList,
		);

		const down = (x: number) => this.beginDrag(x);
		const move = (x: number) => this.moveDrag(x);
		const up = (x: number) => {
			this.lastOperation = this.endDrag(x);
		};
		this.track.addEventListener("pointerdown", (e) => down((e as PointerEvent).clientX));
		this.track.addEventListener("pointermove", (e) => move((e as PointerEvent).clientX));
		this.track.addEventListener("pointerup", (e) => up((e as PointerEvent).clientX));
		this.track.addEventListener("mousedown", (e) => down((e as MouseEvent).clientX));
		this.track.addEventListener("mousemove", (e) => move((e as MouseEvent).clientX));
		this.track.addEventListener("mouseup", (e) => up((e as MouseEvent).clientX));
	}

	async start(request: CreateSessionRequest): Promise<SessionView> {
		const view = await this.api.createSession(request);
		await this.adopt(view);
		return view;
	}

	/** Adopt a service view as truth and re-render everything from it. */
	async adopt(view: SessionView): Promise<void> {
		this.view = view;
		this.hint =
			view.status === "awaiting-human" ? await this.api.hint(view.session_id) : null;
		this.render();
	}

	// -- drag entry -----------------------------------------------------------

	private trackFraction(clientX: number): number {
		const { left, width } = this.metrics();
		return (clientX - left) / width;
	}

	private beginDrag(clientX: number): void {
		if (!this.hint || this.hint.regions.length === 0) return;
		this.dragX = clientX;
		this.moveDrag(clientX);
	}

	private moveDrag(clientX: number): void {
		if (this.dragX === null) return;
		this.dragX = clientX;
		const candidate = this.candidateFromX(clientX);
		if (candidate) {
			this.preview.hidden = false;
			this.positionBar(this.preview, candidate.lo, candidate.hi);
		}
	}

	private async endDrag(clientX: number): Promise<void> {
		if (this.dragX === null) return;
		this.dragX = null;
		this.preview.hidden = true;
		const candidate = this.candidateFromX(clientX);
		if (!candidate) return;
		await this.submitInterval(ratToString(candidate.lo), ratToString(candidate.hi));
	}

	/** Event handlers fire and forget; tests await the last round trip here. */
	settled(): Promise<unknown> {
		return this.lastOperation;
	}

	/**
	 * Convert a pointer x to an exact candidate interval: quantize the track
	 * position to k/2^20, place the left endpoint in the hint's feasible
	 * range, and lock the length to the required exact length. Quantization
	 * rounds toward the feasible region, so in clamped mode near-boundary
	 * drags always produce legal moves.
	 */
	candidateFromX(clientX: number): { lo: Rat; hi: Rat } | null {
		if (!this.hint || this.hint.regions.length === 0) return null;
		const t = this.trackFraction(clientX);
		const span = this.window.hi - this.window.lo;
		const coordinate = this.window.lo + t * span;
		const region = this.pickRegion(coordinate);
		const minLeft = ratFromString(region.min_left_endpoint);
		const maxLeft = ratFromString(region.max_left_endpoint);
		const lowNumeric = toNumber(minLeft);
		const highNumeric = toNumber(maxLeft);
		const relative =
			highNumeric === lowNumeric
				? 0
				: (coordinate - lowNumeric) / (highNumeric - lowNumeric);
		const fraction = sliderFraction(relative, this.clampDrags);
		const lo = placeInRange(minLeft, maxLeft, fraction);
		const length = this.requiredLength();
		if (!length) return null;
		return { lo, hi: add(lo, length) };
	}

	private pickRegion(coordinate: number) {
		const regions = this.hint!.regions;
		let best = regions[0];
		let bestDistance = Number.POSITIVE_INFINITY;
		for (const region of regions) {
			const lo = toNumber(ratFromString(region.lo));
			const hi = toNumber(ratFromString(region.hi));
			const distance =
				coordinate < lo ? lo - coordinate : coordinate > hi ? coordinate - hi : 0;
			if (distance < bestDistance) {
				best = region;
				bestDistance = distance;
			}
		}
		return best;
	}

	private requiredLength(): Rat | null {
		if (!this.hint) return null;
		if (this.hint.required_length) return ratFromString(this.hint.required_length);
		// Banach-Mazur: no exact requirement; use half the allowed maximum
		if (this.hint.max_length) {
			const max = ratFromString(this.hint.max_length);
			return placeInRange({ n: 0n, d: 1n }, max, { n: 1n, d: 2n });
		}
		return null;
	}

	async submitInterval(lo: string, hi: string): Promise<void> {
		if (!this.view) return;
		const view = await this.api.submitMove(this.view.session_id, lo, hi);
		await this.adopt(view);
	}

	// -- rendering ------------------------------------------------------------

	private render(): void {
		const view = this.view;
		if (!view) return;
		this.statusLabel.textContent =
			`${view.variant} | status ${view.status} | to move ${view.to_move}` +
			` | round ${Math.floor(view.moves.length / 2)} of ${view.horizon}`;

		this.movesList.textContent = "";
		for (const move of view.moves) {
			const item = document.createElement("li");
			item.className = PLAYER_CLASS[move.player] ?? "";
			item.textContent = `${move.player}: [${move.lo}, ${move.hi}]`;
			this.movesList.append(item);
		}

		if (view.bracket) {
			this.bracketLabel.textContent = `bracket: [${view.bracket.lo}, ${view.bracket.hi}]`;
			this.updateWindow(view.bracket);
		} else {
			this.bracketLabel.textContent = "bracket: (no moves yet)";
		}

		if (view.violation) {
			this.violationBanner.hidden = false;
			this.violationBanner.textContent = `${view.violation.code}: ${view.violation.detail}`;
		} else {
			this.violationBanner.hidden = true;
			this.violationBanner.textContent = "";
		}

		if (view.status === "finished") {
			this.verdictPanel.hidden = false;
			const point = view.certificate?.point;
			this.verdictPanel.textContent =
				`verdict: ${view.verdict}` + (point !== undefined ? ` | pinned point ${point}` : "");
		} else {
			this.verdictPanel.hidden = true;
		}

		this.lane.textContent = "";
		for (const move of view.moves) {
			const bar = el("div", `board-move ${PLAYER_CLASS[move.player] ?? ""}`);
			this.positionBar(bar, ratFromString(move.lo), ratFromString(move.hi));
			bar.title = `${move.player}: [${move.lo}, ${move.hi}]`;
			this.lane.append(bar);
		}

		if (this.hint && this.hint.regions.length > 0) {
			this.overlay.hidden = false;
			const first = this.hint.regions[0];
			const last = this.hint.regions[this.hint.regions.length - 1];
			this.positionBar(
				this.overlay,
				ratFromString(first.lo),
				ratFromString(last.hi),
			);
		} else {
			this.overlay.hidden = true;
		}
	}

	/** Logarithmic auto-zoom: once the bracket is under 5% of the window it
	 * becomes the new window center at a fixed multiple of its width. */
	private updateWindow(bracket: { lo: string; hi: string }): void {
		const lo = toNumber(ratFromString(bracket.lo));
		const hi = toNumber(ratFromString(bracket.hi));
		const width = hi - lo;
		const span = this.window.hi - this.window.lo;
		if (this.window.lo > lo || this.window.hi < hi) {
			this.window = { lo: lo - width, hi: hi + width };
			return;
		}
		if (width > 0 && width < span * ZOOM_TRIGGER) {
			const center = (lo + hi) / 2;
			const newSpan = width * ZOOM_SPAN;
			this.window = { lo: center - newSpan / 2, hi: center + newSpan / 2 };
		}
	}

	private positionBar(bar: HTMLElement, lo: Rat, hi: Rat): void {
		const span = this.window.hi - this.window.lo;
		const left = ((toNumber(lo) - this.window.lo) / span) * 100;
		const right = ((toNumber(hi) - this.window.lo) / span) * 100;
		bar.style.left = `${left}%`;
		bar.style.width = `${Math.max(right - left, 0.2)}%`;
	}
}

function el(tag: "div", className: string): HTMLDivElement {
	const node = document.createElement(tag);
	node.className = className;
	return node;
}
