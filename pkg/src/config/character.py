# Default character: system-side commitments authored by the operator.
# Level names are upper-snake ordinal levels; modality defaults to POSSIBLE.
DEFAULT_CHARACTER = {
    "highest_endeavour": [
        {
            "description": "Produce accurate output",
            "level": "ETHICAL_MORAL",
            "operator": "OUGHT",
        },
        {
            "description": "Operator authority over deliverables",
            "level": "LEGAL",
            "operator": "REQUIRED",
        },
        {
            "description": "External comms require safety eval",
            "level": "PROFESSIONAL_ETHICS",
            "operator": "REQUIRED",
        },
        {
            "description": "Protect user privacy",
            "level": "ETHICAL_MORAL",
            "operator": "REQUIRED",
        },
    ]
}

# Character used for delivery decisions: comms safety, operator authority
# and accuracy, with no categorical commitment
DELIVERY_CHARACTER = {
    "highest_endeavour": [
        {
            "description": "External comms require safety eval",
            "level": "PROFESSIONAL_ETHICS",
            "operator": "REQUIRED",
        },
        {
            "description": "Operator authority over deliverables",
            "level": "LEGAL",
            "operator": "REQUIRED",
        },
        {
            "description": "Produce accurate output",
            "level": "ETHICAL_MORAL",
            "operator": "OUGHT",
        },
    ]
}
