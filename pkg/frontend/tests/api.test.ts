import { describe, expect, test } from "vitest";

import {
  ApiError,
  fetchAlignment,
  fetchBacklog,
  putAsset,
  putRuleTable,
} from "../src/api.js";
import type { AssetDoc } from "../src/types.js";
import { salesDocument } from "./fixture.js";
import { stubFetch } from "./stub.js";

const asset: AssetDoc = {
  id: "ci-sales-web",
  name: "Sales web",
  state: "to-be-operational",
  supports: ["bp-sales"],
};

describe("mutations", () => {
  test("the based-on snapshot travels as an If-Match header", async () => {
    const recorded = stubFetch({
      "PUT /api/assets/ci-sales-web": { json: { snapshot: 3, warnings: [] } },
    });
    const result = await putAsset(asset, 2);
    expect(result.snapshot).toBe(3);
    expect(recorded[0]?.headers["If-Match"]).toBe("2");
    expect(recorded[0]?.body).toEqual(asset);
  });

  test("a stale snapshot surfaces as a 409 ApiError carrying the current one", async () => {
    stubFetch({
      "PUT /api/assets/ci-sales-web": {
        status: 409,
        json: { detail: { message: "stale snapshot; current snapshot is 5", snapshot: 5 } },
      },
    });
    const error = await putAsset(asset, 2).catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBe(409);
    expect((error as ApiError).detail.snapshot).toBe(5);
  });

  test("a rejected mutation carries the validation findings", async () => {
    stubFetch({
      "PUT /api/rule-table": {
        status: 400,
        json: {
          detail: {
            message: "mutation rejected: it would leave the registry invalid",
            findings: [
              {
                severity: "error",
                entityId: "rule-table",
                message: "business dominance violated at state operational: core-support rank 3 > other rank 1",
              },
            ],
          },
        },
      },
    });
    const error = await putRuleTable(
      { cells: salesDocument.ruleTable.cells },
      1,
    ).catch((e: unknown) => e);
    expect((error as ApiError).status).toBe(400);
    expect((error as ApiError).detail.findings).toHaveLength(1);
    expect((error as ApiError).detail.findings?.[0]?.message).toContain(
      "business dominance violated",
    );
  });
});

describe("reads", () => {
  test("backlog rows come through typed and ordered", async () => {
    stubFetch({
      "GET /api/backlog": {
        json: {
          snapshot: 1,
          items: [
            {
              position: 1,
              itemId: "td-checkout-cache",
              title: "Replace ad-hoc checkout cache",
              rank: 1,
              technicalPriority: "medium",
              createdAt: "2024-03-04T09:30:00+00:00",
              decisiveAsset: { id: "ci-sales-web", name: "Sales web" },
              decisiveProcess: { id: "bp-sales", name: "Sales" },
              decisiveCell: { processType: "core-support", assetState: "operational" },
            },
          ],
        },
      },
    });
    const backlog = await fetchBacklog();
    expect(backlog.items[0]?.rank).toBe(1);
    expect(backlog.items[0]?.decisiveProcess?.name).toBe("Sales");
  });

  test("the metric goes into the query string", async () => {
    const recorded = stubFetch({
      "GET /api/alignment?metric=urgency": {
        json: {
          snapshot: 1,
          metric: "urgency",
          perLevel: {},
          total: { matched: 0, total: 0, percent: "n/a" },
          confusion: {},
          misalignments: [],
        },
      },
    });
    const report = await fetchAlignment("urgency");
    expect(report.metric).toBe("urgency");
    expect(recorded[0]?.path).toBe("/api/alignment?metric=urgency");
  });
});
