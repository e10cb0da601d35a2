import { beforeEach, describe, expect, it } from "vitest";

import { PARAM_DEFAULTS, STYLE_DEFAULTS } from "../src/defaults";
import { FormError, ParameterForm } from "../src/form";
import { mountPage } from "./helpers";

describe("ParameterForm", () => {
  beforeEach(() => {
    mountPage();
  });

  function field(name: string): HTMLInputElement {
    return document.querySelector(`[name="${name}"]`) as HTMLInputElement;
  }

  it("reset restores every default exactly", () => {
    const form = new ParameterForm(document);
    field("alpha").value = "1.9";
    field("coeff").value = "3";
    field("dt").value = "0.5";
    field("duration").value = "42";
    field("y0").value = "7";
    field("yp0").value = "-1";
    field("forcing").value = "sin(t)";
    field("method").value = "analytic";
    field("line").value = "dashed";
    field("marker").value = "circle";

    form.reset();

    expect(form.params()).toEqual(PARAM_DEFAULTS);
    expect(form.method()).toBe("pece");
    expect(form.style()).toEqual(STYLE_DEFAULTS);
  });

  it("initial markup already carries the defaults", () => {
    const form = new ParameterForm(document);
    expect(form.params()).toEqual(PARAM_DEFAULTS);
  });

  it("rejects alpha outside (0, 2] before any request is made", () => {
    const form = new ParameterForm(document);
    field("alpha").value = "2.5";
    expect(() => form.params()).toThrow(FormError);
    field("alpha").value = "0";
    expect(() => form.params()).toThrow(/within \(0, 2\]/);
  });

  it("rejects non-numeric fields", () => {
    const form = new ParameterForm(document);
    field("dt").value = "abc";
    expect(() => form.params()).toThrow(/dt/);
  });

  it("legend label reflects the parameters", () => {
    const form = new ParameterForm(document);
    field("alpha").value = "0.7";
    field("forcing").value = "sin(t)";
    const label = form.legendLabel(form.params(), "pece");
    expect(label).toContain("alpha=0.7");
    expect(label).toContain("f=sin(t)");
  });
});
