/**
 * Exact rationals over BigInt for the client side.
 *
 * The service is the only authority on displayed numbers: strings received
 * from it are rendered verbatim. This module exists so gestures can be
 * converted to exact "p/q" submissions (slider positions are quantized to a
 * declared denominator cap) and so geometry code can order endpoints without
 * ever reformatting a service string.
 */

export interface Rat {
	readonly n: bigint; // numerator, sign lives here
	readonly d: bigint; // denominator > 0
}

export const SLIDER_DENOMINATOR_CAP = 1n << 20n;

function gcd(a: bigint, b: bigint): bigint {
	let x = a < 0n ? -a : a;
	let y = b < 0n ? -b : b;
	while (y !== 0n) {
		[x, y] = [y, x % y];
	}
	return x;
}

export function rat(n: bigint, d: bigint): Rat {
	if (d === 0n) throw new Error("zero denominator");
	if (d < 0n) {
		n = -n;
		d = -d;
	}
	const g = gcd(n, d);
	return g === 0n ? { n: 0n, d: 1n } : { n: n / g, d: d / g };
}

const RATIONAL_RE = /^[+-]?\d+(\/[1-9]\d*)?$/;

export function ratFromString(text: string): Rat {
	if (!RATIONAL_RE.test(text)) throw new Error(`not a rational literal: ${text}`);
	const [numPart, denPart] = text.split("/");
	return rat(BigInt(numPart), denPart === undefined ? 1n : BigInt(denPart));
}

/** Lowest-terms "p/q", bare "p" for integers; same form the service emits. */
export function ratToString(value: Rat): string {
	return value.d === 1n ? value.n.toString() : `${value.n}/${value.d}`;
}

export function add(a: Rat, b: Rat): Rat {
	return rat(a.n * b.d + b.n * a.d, a.d * b.d);
}

export function sub(a: Rat, b: Rat): Rat {
	return rat(a.n * b.d - b.n * a.d, a.d * b.d);
}

export function mul(a: Rat, b: Rat): Rat {
	return rat(a.n * b.n, a.d * b.d);
}

export function cmp(a: Rat, b: Rat): number {
	const left = a.n * b.d;
	const right = b.n * a.d;
	return left === right ? 0 : left < right ? -1 : 1;
}

export function min(a: Rat, b: Rat): Rat {
	return cmp(a, b) <= 0 ? a : b;
}

export function max(a: Rat, b: Rat): Rat {
	return cmp(a, b) >= 0 ? a : b;
}

/** Display-only conversion; never feeds back into submitted values. */
export function toNumber(value: Rat): number {
	return Number(value.n) / Number(value.d);
}

/**
 * Quantize a track position t in [0,1] to k/cap. Out-of-range positions are
 * clamped toward the feasible region unless clamp is disabled (a diagnostic
 * mode proving that the service re-validates everything).
 */
export function sliderFraction(
	t: number,
	clamp = true,
	cap: bigint = SLIDER_DENOMINATOR_CAP,
): Rat {
	let k = BigInt(Math.round(t * Number(cap)));
	if (clamp) {
		if (k < 0n) k = 0n;
		if (k > cap) k = cap;
	}
	return rat(k, cap);
}

/** Exact placement inside [lo, hi]: lo + (hi - lo) * fraction. */
export function placeInRange(lo: Rat, hi: Rat, fraction: Rat): Rat {
	return add(lo, mul(sub(hi, lo), fraction));
}
