// The sales example registry, as GET /api/registry returns it in
// `document`. Mirrors fixtures/sales.registry.json in the service repo.
import type { RegistryDoc } from "../src/types.js";

export const salesDocument: RegistryDoc = {
  "formatVersion": 1,
  "processes": [
    {
      "id": "bp-sales",
      "name": "Sales",
      "type": "core-support",
      "criticality": "high",
      "urgency": "high",
      "elements": [
        {
          "id": "bpe-checkout",
          "name": "Checkout",
          "priority": "high",
          "criticality": "high"
        }
      ]
    },
    {
      "id": "bp-reporting",
      "name": "Internal reporting",
      "type": "other",
      "criticality": "low",
      "urgency": "low",
      "elements": []
    }
  ],
  "assets": [
    {
      "id": "ci-sales-web",
      "name": "Sales web",
      "state": "operational",
      "supports": [
        "bp-sales"
      ]
    },
    {
      "id": "ci-reporting-batch",
      "name": "Reporting batch",
      "state": "to-be-operational",
      "supports": [
        "bp-reporting"
      ]
    }
  ],
  "backlog": {
    "id": "backlog-main",
    "items": [
      {
        "id": "td-batch-rewrite",
        "title": "Rewrite reporting batch scheduler",
        "description": "The scheduler is a pile of cron scripts; replace before go-live.",
        "affects": [
          "ci-reporting-batch"
        ],
        "createdAt": "2024-02-19T14:05:00+00:00",
        "technicalPriority": "high",
        "debtTypeLabel": "architecture"
      },
      {
        "id": "td-checkout-cache",
        "title": "Replace ad-hoc checkout cache",
        "description": "Hand-rolled cache in the checkout path; invalidation bugs keep surfacing.",
        "affects": [
          "ci-sales-web"
        ],
        "createdAt": "2024-03-04T09:30:00+00:00",
        "technicalPriority": "medium",
        "debtTypeLabel": "code"
      }
    ]
  },
  "ruleTable": {
    "cells": [
      {
        "processType": "core-support",
        "assetState": "operational",
        "rank": 1
      },
      {
        "processType": "core-support",
        "assetState": "to-be-operational",
        "rank": 2
      },
      {
        "processType": "other",
        "assetState": "operational",
        "rank": 3
      },
      {
        "processType": "other",
        "assetState": "to-be-operational",
        "rank": 4
      }
    ]
  },
  "valueMap": {
    "horizons": [
      "immediate",
      "short-term",
      "long-term"
    ],
    "attachments": [
      {
        "subject": "bp-sales",
        "metric": {
          "id": "m-sales-volume",
          "name": "sales volume",
          "horizon": "immediate"
        }
      },
      {
        "subject": "bp-sales",
        "metric": {
          "id": "m-customer-relationship",
          "name": "customer relationship",
          "horizon": "immediate"
        }
      },
      {
        "subject": "bp-sales",
        "metric": {
          "id": "m-revenue",
          "name": "revenue",
          "horizon": "short-term"
        }
      },
      {
        "subject": "ci-reporting-batch",
        "metric": {
          "id": "m-infra-cost",
          "name": "infrastructure cost",
          "horizon": "short-term"
        }
      }
    ]
  }
} as RegistryDoc;
