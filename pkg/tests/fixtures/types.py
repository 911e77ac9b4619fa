from __future__ import annotations
from typing import Literal, NewType
Channel = NewType("Channel", str)
PGChannel = Channel
OPERATIONS = Literal["insert", "update", "delete", "truncate"]
EVENT_TYPES = Literal["table_changed_event", "requests_per_second_event", "cancellation_event"]
JobId = NewType("JobId", int)
JOB_STATUS = Literal[
    "queued",
    "picked",
    "successful",
    "canceled",
    "deleted",
    "exception",
]
CronEntrypoint = NewType(
    "CronEntrypoint", 
    str
)
CronExpression = NewType(
    "CronExpression", 
    str
)
ScheduleId = NewType(
    "ScheduleId", 
    int
)
