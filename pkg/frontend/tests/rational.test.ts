import { describe, expect, it } from "vitest";

import {
	SLIDER_DENOMINATOR_CAP,
	add,
	cmp,
	placeInRange,
	rat,
	ratFromString,
	ratToString,
	sliderFraction,
	sub,
} from "../src/rational.js";

describe("rational wire format", () => {
	it("parses p/q and bare integers", () => {
		expect(ratFromString("5")).toEqual({ n: 5n, d: 1n });
		expect(ratFromString("-3/7")).toEqual({ n: -3n, d: 7n });
		expect(ratFromString("2/4")).toEqual({ n: 1n, d: 2n });
	});

	it("rejects decimals and malformed input", () => {
		for (const bad of ["0.5", "", "1/0", "1/-2", "x"]) {
			expect(() => ratFromString(bad)).toThrow();
		}
	});

	it("formats in lowest terms like the service", () => {
		expect(ratToString(rat(4n, 8n))).toBe("1/2");
		expect(ratToString(rat(-10n, 5n))).toBe("-2");
	});

	it("round-trips", () => {
		for (const text of ["13/32", "-1048573/1048576", "0", "7"]) {
			expect(ratToString(ratFromString(text))).toBe(text);
		}
	});
});

describe("exact arithmetic", () => {
	it("adds and subtracts exactly", () => {
		const a = ratFromString("1/3");
		const b = ratFromString("1/6");
		expect(ratToString(add(a, b))).toBe("1/2");
		expect(ratToString(sub(a, b))).toBe("1/6");
	});

	it("orders without floats", () => {
		expect(cmp(ratFromString("1/3"), ratFromString("333333/1000000"))).toBe(1);
	});
});

describe("drag conversion", () => {
	it("quantizes to the declared denominator cap", () => {
		const fraction = sliderFraction(0.4999999);
		expect(fraction.d <= SLIDER_DENOMINATOR_CAP).toBe(true);
	});

	it("rounds toward the feasible region when clamped", () => {
		expect(sliderFraction(-0.2)).toEqual({ n: 0n, d: 1n });
		expect(sliderFraction(1.7)).toEqual({ n: 1n, d: 1n });
	});

	it("can leave the feasible region when clamping is disabled", () => {
		const fraction = sliderFraction(1.5, false);
		expect(cmp(fraction, { n: 1n, d: 1n })).toBe(1);
	});

	it("places exactly within a range", () => {
		const lo = ratFromString("-1/2");
		const hi = ratFromString("-3/10");
		expect(ratToString(placeInRange(lo, hi, { n: 0n, d: 1n }))).toBe("-1/2");
		expect(ratToString(placeInRange(lo, hi, { n: 1n, d: 1n }))).toBe("-3/10");
		expect(ratToString(placeInRange(lo, hi, { n: 1n, d: 2n }))).toBe("-2/5");
	});
});
