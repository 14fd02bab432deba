/**
 * Real pipeline documents for the sample utterance (seed 0), used by
 * the fake server so unit tests exercise true wire shapes.
 */

import type { AnalysisDoc, FeedbackDoc, TherapyDoc } from "../src/types.js";

export const FIXTURE_ANALYSIS: AnalysisDoc = {
  "analysis_id": "an-e0b00794842ff21c",
  "transcript": "HELLO GOOD MORNING",
  "source": "file",
  "phoneme_issues": [
    {
      "symbol": "HH",
      "confidence": 0.705,
      "position": 0,
      "deficit": 0.29500000000000004
    },
    {
      "symbol": "EH",
      "confidence": 0.417,
      "position": 1,
      "deficit": 0.583
    },
    {
      "symbol": "L",
      "confidence": 0.738,
      "position": 2,
      "deficit": 0.262
    }
  ],
  "category_confidences": {
    "RSound": 0.2,
    "SSound": 0.2,
    "ThSound": 0.3,
    "LSound": 0.20365121392301203,
    "ConsonantCluster": 0.2,
    "VowelDistortion": 0.3966807589566287
  },
  "flagged": [
    {
      "category": "VowelDistortion",
      "confidence": 0.3966807589566287
    },
    {
      "category": "LSound",
      "confidence": 0.20365121392301203
    }
  ],
  "severity": "mild",
  "spike_summary": {
    "RSound": {
      "spike_density": 0.0,
      "pattern_mismatch": 1.0
    },
    "SSound": {
      "spike_density": 0.0,
      "pattern_mismatch": 1.0
    },
    "ThSound": {
      "spike_density": 0.0,
      "pattern_mismatch": 1.0
    },
    "LSound": {
      "spike_density": 0.1875,
      "pattern_mismatch": 0.08200606961506007
    },
    "ConsonantCluster": {
      "spike_density": 0.0,
      "pattern_mismatch": 1.0
    },
    "VowelDistortion": {
      "spike_density": 0.5,
      "pattern_mismatch": 0.044935863188762304
    }
  },
  "issue_threshold": 0.75,
  "seed": 0,
  "warnings": [
    "VowelDistortion: spike density 0.5000 outside typical band [0.2, 0.35]"
  ]
} as AnalysisDoc;

export const FIXTURE_THERAPY: TherapyDoc = {
  "analysis_id": "an-e0b00794842ff21c",
  "difficulty": "easy",
  "exercises": [
    {
      "exercise_id": "ex-927e7612496f894f",
      "sentence": "I see a bee.",
      "category": "VowelDistortion",
      "difficulty": "easy",
      "target_phonemes": [
        "AH",
        "AY",
        "IY"
      ],
      "score_breakdown": {
        "relevance": 0.8333333333333334,
        "difficulty_alignment": 0.8,
        "personalization": 0.0,
        "total": 0.6566666666666667
      },
      "origin": "template",
      "description": "Read the sentence aloud, holding each vowel steady and fully formed."
    },
    {
      "exercise_id": "ex-afc26535480fef4f",
      "sentence": "Let the ball roll.",
      "category": "LSound",
      "difficulty": "easy",
      "target_phonemes": [
        "L"
      ],
      "score_breakdown": {
        "relevance": 0.29545454545454547,
        "difficulty_alignment": 0.8,
        "personalization": 0.0,
        "total": 0.3877272727272727
      },
      "origin": "template",
      "description": "Read the sentence aloud, lifting the tongue tip to the ridge behind the teeth for each L."
    }
  ]
} as TherapyDoc;

export const FIXTURE_FEEDBACK: FeedbackDoc = {
  "analysis_id": "an-e0b00794842ff21c",
  "specific": [
    {
      "category": "VowelDistortion",
      "text": "Watch your mouth in a mirror: rounded lips for OO and OH, spread lips for EE, open jaw for AH."
    },
    {
      "category": "LSound",
      "text": "Press the tip of your tongue against the bumpy ridge right behind your top front teeth and drop it as the L releases."
    }
  ],
  "general": [
    "Use a mirror so you can see your lips, jaw, and tongue while you speak.",
    "Record yourself and listen back; your ears catch what your mouth misses.",
    "Exaggerate the target sounds during practice, then relax toward normal speech."
  ],
  "visual": [
    {
      "category": "LSound",
      "guide_type": "tongue-position",
      "description": "Tongue tip pressed on the alveolar ridge just behind the upper front teeth for L.",
      "reference": "visual/l_tongue_position.svg"
    },
    {
      "category": "VowelDistortion",
      "guide_type": "lip-shape",
      "description": "Chart of lip shapes for the main vowels: spread for EE, rounded for OO, open for AH.",
      "reference": "visual/vowel_lip_shapes.svg"
    }
  ],
  "overall": "Simple practice",
  "exercise": null
} as FeedbackDoc;
