"""creatorkit: editorial decision support for short-form video.

Popularity models for headlines, thumbnails and opening scenes with
attention/saliency explanations, an archive tag index with chat access,
percentile alerting and A/B lift analysis.
"""

__version__ = "0.1.0"
