"""Prompt templates for the two-step grouping pipeline and the drafting step.

Rendering is deterministic: the same inputs always produce byte-identical
prompts, which the golden-file tests pin down.
"""

from __future__ import annotations

import json
from string import Template

from ..corpus import WorkInProgress
from .groupings import CitationGroup, GroupingSet, grouping_to_dict

_STEP_1A_EXAMPLE = """\
{
  "1": {
    "group_name": "Name of first group",
    "group_rationale": "This rationale explains why this group should exist and how it helps frame the work-in-progress.",
    "cited_papers": [
      {
        "id": "1",
        "title": "Title of the first paper included in the group"
      },
      {
        "id": "3",
        "title": "Title of the second paper included in group 1"
      }
    ]
  },
  "2": {
    "group_name": "Name of second group",
    "group_rationale": "This rationale explains why this group should exist and how it helps frame the work-in-progress.",
    "cited_papers": [
      {
        "id": "2",
        "title": "Title of the first paper included in the group"
      },
      {
        "id": "3",
        "title": "Title of the second paper included in group 2"
      }
    ]
  }
}"""

_STEP_1B_INPUT_EXAMPLE = """\
{
  "1": {
    "group_name": "Name of first group",
    "group_rationale": "This rationale explains why this group should exist and how it helps frame the work-in-progress.",
    "cited_papers": [
      {
        "id": "1",
        "title": "Title of the first paper included in the group"
      },
      {
        "id": "3",
        "title": "Title of the second paper included in the group"
      }
    ]
  }
}"""

_STEP_1B_OUTPUT_EXAMPLE = """\
{
  "1": {
    "group_name": "Name of first group",
    "group_rationale": "This rationale explains why this group should exist and how it helps frame the work-in-progress.",
    "cited_papers": [
      {
        "id": "1",
        "title": "Title of the first paper included in the group",
        "citation_rationale": "the rationale for this paper's inclusion in the group",
        "span": "The span of text from the abstract that supports the rationale"
      },
      {
        "id": "3",
        "title": "Title of the second paper included in the group",
        "citation_rationale": "the rationale for this paper's inclusion in the group",
        "span": "The span of text from the abstract that supports the rationale"
      }
    ]
  }
}"""

_STEP_1A_TEMPLATE = Template(
    """\
I will provide you with the abstract, introduction, and conclusion sections of an in-progress academic paper, along with a list of relevant scholarly articles. Each article is identified by a unique ID. Your task is to organize these articles into thematic citation groups that align with and support the framing of the in-progress paper. For each citation group, you should:
1. Name the Group: Assign a descriptive name that captures the thematic focus of the group;
2. Explain the Rationale: Detail how the articles within this group contribute to or support the thematic framework of the in-progress paper; and
3. List the Cited Papers: Include the articles that fall under this thematic group, providing for each article the citation ID and the title.

It's important that each article is placed in at least one group, although articles may fit into multiple groups if applicable.

Your response should be formatted as a JSON object, where each key represents a unique group index. The value for each key should be a dictionary with three main keys: 'group_name', 'group_rationale', and 'cited_papers'. The 'cited_papers' should be a list of dictionaries, each containing 'id' and 'title' keys for the articles. Here is the structure for your output:
$example

Title: $title

Abstract: $abstract

Introduction
$introduction

Conclusion
$conclusion

Related Works:
$related_works
"""
)

_STEP_1B_TEMPLATE = Template(
    """\
I will provide you with the abstract, introduction, and conclusion sections of an in-progress academic paper, a data structure showing a citation group and the titles of the papers assigned to the group, and the abstracts of each of the cited works and their IDs. I need you to update the information in the data structure by doing the following:
1. provide rationales for the inclusion of each work in its group based on the provided abstract;
2. provide the span of text from the abstract that supports your rationale; and
3. output the revised data structure following a pattern I will give you.
The input data is a dictionary where each key is a group index. Each value is a dictionary with three top-level keys: 'group_name', 'group_rationale', and 'cited_papers'. The value for papers is a list of dictionaries. Each dictionary has two keys: 'id', and 'title'. Here is the structure for the input:
$input_example

The output data will have the same structure, except that the data will be updated for each cited work to include the following keys: 'id', 'title', 'citation_rationale', and 'span'. Here is the structure for your output:
$output_example
Please ensure your response consists solely of the fully formed JSON data structure, with no additional text outside of the JSON formatting. Ensure no entry from the JSON data structure is omitted.

Citation group:
$group_json

Work-in-progress data:
Title: $title

Abstract: $abstract

Introduction
$introduction

Conclusion
$conclusion

Related Works:
$related_works
"""
)

_STEP_2_TEMPLATE = Template(
    """\
Given the context of an in-progress scholarly paper and a set of groupings of related works, your task is to generate the related work section of the work-in-progress. The groupings will be provided to you in json format. The top-level keys are numbers, which are the group indices. Each value is another dictionary, which has the following keys:
1. 'group_name' (the name of the group);
2. 'group_rationale' (an explanation of how the group supports and frames the scholarly work-in-progress); and
3. 'cited_papers' (the list of papers that belong to the group).
Each entry in the cited_papers list is another dictionary, which has the following keys:
1. 'id' (the citation ID);
2. 'title': (the title of the citation);
3. 'citation_rationale' (an explanation of why this cited work should be in this citation group); and
4. 'span' (the span of text from the work's abstract that supports the citation_rationale).
Cite the papers using the citation ID. Structure the text so that each grouping is a distinct paragraph. Do not reference the fact that the text was formed from groups (e.g. do not say "The group 'Data Mining Approaches' includes citations [1] through [2]").

Groupings:
$groupings_json

Work-in-progress data:
Title: $title

Abstract: $abstract

Introduction
$introduction

Conclusion
$conclusion
"""
)


def _dump(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2)


def render_prompt_1a(wip: WorkInProgress) -> str:
    """Titles-only grouping prompt over the whole citation list."""
    if not wip.citations:
        raise ValueError("work-in-progress has no citations to group")
    related = "\n\n".join(f"{c.id}. {c.title}" for c in wip.citations)
    return _STEP_1A_TEMPLATE.substitute(
        example=_STEP_1A_EXAMPLE,
        title=wip.title,
        abstract=wip.abstract,
        introduction=wip.introduction,
        conclusion=wip.conclusion,
        related_works=related,
    )


def render_prompt_1b(wip: WorkInProgress, group: CitationGroup, abstracts: dict[int, str]) -> str:
    """Per-group refinement prompt; abstracts must cover the group's ids."""
    missing = group.cited_ids() - abstracts.keys()
    if missing:
        raise ValueError(f"abstracts missing for citations {sorted(missing)}")
    group_doc = {
        str(group.index): {
            "group_name": group.group_name,
            "group_rationale": group.group_rationale,
            "cited_papers": [{"id": str(p.id), "title": p.title} for p in group.cited_papers],
        }
    }
    blocks = []
    for paper in group.cited_papers:
        blocks.append(f"ID: {paper.id}\ntitle: {paper.title}\nabstract: {abstracts[paper.id]}")
    return _STEP_1B_TEMPLATE.substitute(
        input_example=_STEP_1B_INPUT_EXAMPLE,
        output_example=_STEP_1B_OUTPUT_EXAMPLE,
        group_json=_dump(group_doc),
        title=wip.title,
        abstract=wip.abstract,
        introduction=wip.introduction,
        conclusion=wip.conclusion,
        related_works="\n\n".join(blocks),
    )


def render_prompt_2(wip: WorkInProgress, grouping: GroupingSet) -> str:
    """Drafting prompt over the full grouping set; coverage must already hold."""
    gap = grouping.coverage_gap()
    if gap:
        raise ValueError(f"groupings do not cover citations {sorted(gap)}")
    return _STEP_2_TEMPLATE.substitute(
        groupings_json=_dump(grouping_to_dict(grouping)),
        title=wip.title,
        abstract=wip.abstract,
        introduction=wip.introduction,
        conclusion=wip.conclusion,
    )
