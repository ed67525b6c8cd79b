"""roomvoice: an edge voice-command runtime for meeting rooms.

Subpackages:
  audio    -- framing, log-mel features, VAD, utterance segmentation
  hotword  -- GRU wake-word classifier and trigger policy
  asr      -- transcription client, mock backend, WER evaluation
  nlu      -- intent classification and entity extraction
  runtime  -- command-mode session state machine and privacy enforcement
  skills   -- intent-to-action dispatch, audio-visual fusion skills
  tracker  -- panoramic participant tracking
  fleet    -- device fleet administration service
"""

__version__ = "0.1.0"
