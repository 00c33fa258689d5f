import { describe, expect, it } from "vitest";

import { escapeHtml, typeset, typesetValue } from "../src/format.js";

describe("typeset", () => {
  it("turns exponents into superscripts", () => {
    expect(typeset("m^2")).toBe("m<sup>2</sup>");
    expect(typeset("s^-2")).toBe("s<sup>-2</sup>");
    expect(typeset("2^2022*x + 1")).toBe("2<sup>2022</sup>·x + 1");
  });

  it("uses middle dots for products and radical signs for sqrt", () => {
    expect(typeset("8*A/(A + 8)")).toBe("8·A/(A + 8)");
    expect(typeset("sqrt(2) min")).toBe("√(2) min");
  });

  it("never reorders or rewrites the canonical text", () => {
    expect(typeset("A*B/(A + B)")).toBe("A·B/(A + B)");
    expect(typeset("1/2 - 1/2*sqrt(3)")).toBe("1/2 - 1/2·√(3)");
  });

  it("escapes markup", () => {
    expect(escapeHtml("<b>&</b>")).toBe("&lt;b&gt;&amp;&lt;/b&gt;");
    expect(typeset("<script>")).toContain("&lt;script&gt;");
  });
});

describe("typesetValue", () => {
  it("wraps a trailing unit", () => {
    expect(typesetValue("6 min")).toBe('6<span class="unit"> min</span>');
    expect(typesetValue("3 cherry/min")).toBe(
      '3<span class="unit"> cherry/min</span>',
    );
    expect(typesetValue("8*A/(A + 8) min")).toBe(
      '8·A/(A + 8)<span class="unit"> min</span>',
    );
  });

  it("leaves unitless values alone", () => {
    expect(typesetValue("101")).toBe("101");
  });
});
